#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "adelic_lab/parallel.hpp"
#include "adelic_lab/parse.hpp"
#include "adelic_lab/prng.hpp"
#include "adelic_lab/report.hpp"

using namespace adelic_lab;

namespace {

constexpr const char* kVersion = "adelic-lab 0.1.0";

struct GlobalOpts {
    std::string format = "csv";
    std::string output;
    std::uint64_t seed = 0;
};

void emit(const Table& t, const GlobalOpts& g) {
    const OutputFormat f = parse_format(g.format);
    if (g.output.empty()) {
        write_table(std::cout, t, f);
    } else {
        std::ofstream os(g.output, std::ios::binary);
        if (!os) throw PreconditionError("cannot open output file: " + g.output);
        write_table(os, t, f);
    }
}

Table base_table(const GlobalOpts& g, const std::string& command,
                 std::vector<std::pair<std::string, std::string>> config_echo) {
    Table t;
    t.add_meta("version", kVersion);
    t.add_meta("command", command);
    t.add_meta("seed", std::to_string(g.seed));
    for (auto& [k, v] : config_echo) t.add_meta(k, v);
    return t;
}

std::string dec(const Rational& q) { return decimal_string(q, 12); }
std::string dec(const QuadExtReal& q) {
    if (q.is_rational()) return decimal_string(q.rational_part(), 12);
    std::ostringstream os;
    os.precision(12);
    os << q.to_double();
    return os.str();
}
std::string bool_str(bool b) { return b ? "true" : "false"; }

FareySpec make_spec(const std::string& window, const std::string& dilate,
                    const std::string& translate) {
    return FareySpec(parse_profile(dilate), parse_window(window), parse_rational(translate));
}

// ---------- subcommand payloads ----------

struct FareyArgs {
    std::string window, dilate, translate = "0", folner;
    bool count_only = false;
    std::int64_t cap = 5'000'000;
};

void run_farey(const FareyArgs& a, const GlobalOpts& g) {
    FareySpec spec = make_spec(a.window, a.dilate, a.translate);
    AdelicBox box = parse_box(a.folner);
    Table t = base_table(g, "farey",
                         {{"window", spec.window.str(true)},
                          {"dilate", spec.dilation.str()},
                          {"translate", spec.translate.str()},
                          {"folner", box.str()}});
    if (a.count_only) {
        t.columns = {"count", "measure", "ratio", "ratio_dec"};
        const Int count = count_points(spec, box);
        const Rational measure = box_measure(box);
        const Rational ratio = Rational(count) / measure;
        t.add_row({count.str(), measure.str(), ratio.str(), dec(ratio)});
    } else {
        t.columns = {"numerator", "denominator", "value_dec"};
        for (const auto& p : farey_points(spec, box, a.cap).points)
            t.add_row({p.num().str(), p.den().str(), dec(p)});
    }
    emit(t, g);
}

struct DensityArgs {
    std::string window, dilate, translate = "0", schedule = "standard";
    int nmax = 4;
};

void run_density(const DensityArgs& a, const GlobalOpts& g) {
    FareySpec spec = make_spec(a.window, a.dilate, a.translate);
    FolnerSchedule sched = parse_folner_schedule(a.schedule);
    DensityReport rep = density_estimate(spec, sched, a.nmax);
    Table t = base_table(g, "density",
                         {{"window", spec.window.str(true)},
                          {"dilate", spec.dilation.str()},
                          {"translate", spec.translate.str()},
                          {"schedule", sched.str()},
                          {"target", rep.target.str(true)}});
    t.columns = {"n",      "count",       "measure",   "ratio",
                 "target", "abs_error_bound", "measure_dec", "ratio_dec"};
    for (const auto& row : rep.rows)
        t.add_row({std::to_string(row.n), row.count.str(), row.measure.str(), row.ratio.str(),
                   rep.target.str(true), row.bound.str(), dec(row.measure), dec(row.ratio)});
    emit(t, g);
}

struct DoublingArgs {
    std::string window, dilate, translate = "0", schedule = "standard";
    int nmax = 3;
    int step = 1;
    std::int64_t cap = 50'000'000;
};

void run_doubling(const DoublingArgs& a, const GlobalOpts& g) {
    FareySpec spec = make_spec(a.window, a.dilate, a.translate);
    FolnerSchedule sched = parse_folner_schedule(a.schedule);
    DoublingReport rep = doubling_report(spec, sched, a.nmax, a.step, a.cap);
    Table t = base_table(g, "doubling",
                         {{"window", spec.window.str(true)},
                          {"dilate", spec.dilation.str()},
                          {"translate", spec.translate.str()},
                          {"schedule", sched.str()},
                          {"target", rep.base.target.str(true)},
                          {"diff_target", rep.diff.target.str(true)},
                          {"doubling_target", rep.target_ratio.str(true)}});
    t.columns = {"n",          "count",      "ratio",        "diff_count", "diff_ratio",
                 "doubling_ratio", "doubling_bound", "ratio_dec", "diff_ratio_dec",
                 "doubling_ratio_dec"};
    for (std::size_t i = 0; i < rep.base.rows.size(); ++i) {
        const auto& b = rep.base.rows[i];
        const auto& d = rep.diff.rows[i];
        t.add_row({std::to_string(b.n), b.count.str(), b.ratio.str(), d.count.str(),
                   d.ratio.str(), rep.ratio[i].str(), rep.ratio_bound[i].str(), dec(b.ratio),
                   dec(d.ratio), dec(rep.ratio[i])});
    }
    emit(t, g);
}

struct DiffsetArgs {
    std::string window, dilate, translate = "0", box;
    int step = 1;
    std::int64_t cap = 5'000'000;
};

void run_diffset(const DiffsetArgs& a, const GlobalOpts& g) {
    FareySpec spec = make_spec(a.window, a.dilate, a.translate);
    AdelicBox box = parse_box(a.box);
    Table t = base_table(g, "diffset",
                         {{"window", spec.window.str(true)},
                          {"dilate", spec.dilation.str()},
                          {"translate", spec.translate.str()},
                          {"box", box.str()},
                          {"step", std::to_string(a.step)}});
    t.columns = {"numerator", "denominator", "value_dec"};
    for (const auto& p : difference_points(spec, box, a.step, a.cap).points)
        t.add_row({p.num().str(), p.den().str(), dec(p)});
    emit(t, g);
}

struct ExceptionalArgs {
    std::string window, dilate, translate = "0";
    std::int64_t cap = 1000;
};

void run_exceptional(const ExceptionalArgs& a, const GlobalOpts& g) {
    FareySpec spec = make_spec(a.window, a.dilate, a.translate);
    Table t = base_table(g, "exceptional",
                         {{"window", spec.window.str(true)}, {"cap", std::to_string(a.cap)}});
    t.columns = {"numerator", "denominator", "value_dec"};
    for (const auto& p : exceptional_points(spec, a.cap).points)
        t.add_row({p.num().str(), p.den().str(), dec(p)});
    emit(t, g);
}

struct KneserArgs {
    std::string arcs;
    bool classify = false;
    std::int64_t random = 0;
    std::int64_t zn = 0;
    int max_arcs = 6;
};

void kneser_row(Table& t, const std::string& label, const ArcSet& c, bool classify,
                std::int64_t zn) {
    const auto k = kneser_check(c);
    const bool equality = k.diff_measure == k.bound;
    std::vector<std::string> row = {label,        c.str(),           c.measure().str(),
                                    k.diff_measure.str(), k.bound.str(), bool_str(k.holds),
                                    bool_str(equality)};
    if (classify) {
        const auto cls = kneser_equality_classify(c);
        row.push_back(cls ? std::to_string(cls->order) : "");
        row.push_back(cls ? (cls->base_start.str() + "," +
                             (cls->base_start + cls->base_length).str())
                          : "");
    }
    if (zn > 0) {
        const Int disc = discretized_difference_count(c, zn);
        row.push_back(disc.str());
        row.push_back((k.diff_measure - Rational(disc, Int(zn))).str());
    }
    t.add_row(std::move(row));
}

void run_kneser(const KneserArgs& a, const GlobalOpts& g) {
    Table t = base_table(g, "kneser", {{"classify", bool_str(a.classify)}});
    t.columns = {"case", "arcs", "measure", "diff_measure", "bound", "holds", "equality"};
    if (a.classify) {
        t.columns.push_back("classify_order");
        t.columns.push_back("classify_base");
    }
    if (a.zn > 0) {
        t.columns.push_back("zn_count");
        t.columns.push_back("zn_gap");
        t.add_meta("zn", std::to_string(a.zn));
    }
    if (a.random > 0) {
        // deterministic suite: case i uses an rng forked from the seed
        const std::vector<std::int64_t> dens = {8,  9,  12, 18,  24,  36, 40,
                                                45, 60, 72, 120, 180, 360};
        std::vector<ArcSet> cases;
        Prng rng(g.seed);
        for (std::int64_t i = 0; i < a.random; ++i)
            cases.push_back(i % 5 == 0 ? random_equality_arcset(rng, 5, dens)
                                       : random_arcset(rng, a.max_arcs, dens));
        std::vector<Table> chunks(cases.size());
        std::vector<std::string> labels(cases.size());
        std::vector<ArcSet>& cc = cases;
        std::vector<std::vector<std::string>> rows(cases.size());
        parallel_for(cases.size(), [&](std::size_t i) {
            Table local;
            kneser_row(local, std::to_string(i), cc[i], a.classify, a.zn);
            rows[i] = local.rows[0];
        });
        std::int64_t violations = 0, mismatches = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][5] != "true") ++violations;
            if (a.classify) {
                const bool classified = !rows[i][7].empty();
                const bool equality = rows[i][6] == "true";
                if (classified != equality) ++mismatches;
            }
            t.add_row(rows[i]);
        }
        t.add_meta("violations", std::to_string(violations));
        if (a.classify) t.add_meta("mismatches", std::to_string(mismatches));
    } else {
        kneser_row(t, "0", parse_arcs(a.arcs), a.classify, a.zn);
    }
    emit(t, g);
}

struct BmArgs {
    std::string boxes;
    std::int64_t grid = 256;
    std::int64_t random = 0;
};

void bm_row(Table& t, const std::string& label, const BoxUnion& w, std::int64_t grid) {
    const BmResult r = bm_check(w, grid);
    t.add_row({label, boxunion_str(w), w.volume().str(), r.diff_volume.lower.str(),
               r.diff_volume.upper.str(), r.ratio_lower.str(), r.ratio_upper.str(),
               dec(r.ratio_lower), dec(r.ratio_upper), bool_str(r.holds), bool_str(r.equality)});
}

void run_bm(const BmArgs& a, const GlobalOpts& g) {
    Table t = base_table(g, "bm", {{"grid", std::to_string(a.grid)}});
    t.columns = {"case",        "boxes",       "volume",      "diff_lower", "diff_upper",
                 "ratio_lower", "ratio_upper", "ratio_lower_dec", "ratio_upper_dec", "holds",
                 "equality"};
    if (a.random > 0) {
        Prng rng(g.seed);
        for (std::int64_t i = 0; i < a.random; ++i) {
            const int n = 1 + static_cast<int>(rng.below(3));
            std::vector<BoxNd> boxes;
            std::int64_t pos = -60;
            for (int j = 0; j < n; ++j) {
                pos += 2 + rng.range(0, 10);
                const std::int64_t len = 1 + rng.range(0, 8);
                boxes.push_back(BoxNd{{{Rational(Int(pos), Int(2)),
                                        Rational(Int(pos + len), Int(2))}}});
                pos += len + 2;
            }
            bm_row(t, std::to_string(i), BoxUnion(1, std::move(boxes)), a.grid);
        }
    } else {
        bm_row(t, "0", parse_boxunion(a.boxes), a.grid);
    }
    emit(t, g);
}

struct SumsetArgs {
    std::string window;
    int order = 3;
    std::int64_t grid = 256;
};

void run_sumset(const SumsetArgs& a, const GlobalOpts& g) {
    Window1D w = parse_window(a.window);
    const SumsetBounds v = higher_order_sumset_volume(w, a.order, a.grid);
    Table t = base_table(g, "sumset-r",
                         {{"window", w.str(true)},
                          {"r", std::to_string(a.order)},
                          {"grid", std::to_string(a.grid)}});
    t.columns = {"r", "lower", "upper", "width", "lower_dec", "upper_dec", "exact"};
    t.add_row({std::to_string(a.order), v.lower.str(true), v.upper.str(true),
               v.width().str(true), dec(v.lower), dec(v.upper), bool_str(v.exact)});
    emit(t, g);
}

struct CapsetArgs {
    std::string lattice, window, box;
    std::int64_t cap = 5'000'000;
};

void run_capset(const CapsetArgs& a, const GlobalOpts& g) {
    LatticeSpec lat = parse_lattice(a.lattice);
    Window1D w = parse_window(a.window);
    AdelicBox box = parse_box(a.box);
    Table t = base_table(g, "capset",
                         {{"lattice", lattice_str(lat)},
                          {"window", w.str(true)},
                          {"box", box.str()},
                          {"intensity", intensity_value(lat, w).str(true)}});
    t.columns = {"numerator", "denominator", "real_image", "real_image_dec"};
    for (const auto& p : capset_points(lat, w, box, a.cap))
        t.add_row({p.tag.num().str(), p.tag.den().str(), p.real_image.str(), dec(p.real_image)});
    emit(t, g);
}

struct ReturnTimesArgs {
    std::string lattice, window, box, base_g, base_h;
    std::int64_t cap = 5'000'000;
};

void run_return_times(const ReturnTimesArgs& a, const GlobalOpts& g) {
    CapQuery q{parse_lattice(a.lattice), parse_window(a.window), parse_box(a.box), std::nullopt,
               std::nullopt};
    if (!a.base_g.empty()) q.base_g = parse_rational(a.base_g);
    if (a.base_h.empty()) throw PreconditionError("return-times requires --base-h");
    q.base_h = parse_rational(a.base_h);
    const ReturnTimes rt = return_times(q, a.cap);
    Table t = base_table(g, "return-times",
                         {{"lattice", lattice_str(q.lattice)},
                          {"window", q.window.str(true)},
                          {"box", q.g_box.str()},
                          {"base_g", a.base_g},
                          {"base_h", a.base_h},
                          {"shifted", bool_str(rt.shifted)}});
    t.columns = {"numerator", "denominator", "real_image", "real_image_dec"};
    for (const auto& p : rt.points)
        t.add_row({p.tag.num().str(), p.tag.den().str(), p.real_image.str(), dec(p.real_image)});
    emit(t, g);
}

struct CovolArgs {
    std::string lattice, box, big_t;
    std::int64_t random = 0;
};

void run_covol(const CovolArgs& a, const GlobalOpts& g) {
    Table t = base_table(g, "covol", {});
    t.columns = {"case",     "lattice",  "covolume", "covolume_dec",
                 "estimate", "estimate_dec", "count", "rel_error_bound", "within"};
    auto row = [&](const std::string& label, const LatticeSpec& lat,
                   const std::optional<AdelicBox>& box, const std::optional<Rational>& T) {
        const Rational exact = covolume(lat);
        std::vector<std::string> r = {label, lattice_str(lat), exact.str(), dec(exact)};
        if (box && T) {
            const Rational est = covolume_by_counting(lat, *box, *T);
            const Rational spacing = scalar_spacing(lat, *box);
            const Int count = 2 * floor(*T / (abs(lat.t) * spacing)) + 1;
            const Rational bound = Rational(2) / Rational(count);
            const bool within = abs(est - exact) / exact <= bound;
            r.insert(r.end(),
                     {est.str(), dec(est), count.str(), bound.str(), bool_str(within)});
        } else {
            r.insert(r.end(), {"", "", "", "", ""});
        }
        t.add_row(std::move(r));
    };
    if (a.random > 0) {
        Prng rng(g.seed);
        const Prime pool[] = {2, 3, 5, 7};
        for (std::int64_t i = 0; i < a.random; ++i) {
            const Prime p = pool[rng.below(4)];
            ValuationProfile u;
            if (rng.below(2)) u.set(p, 1 + rng.range(0, 2));
            Rational tv{Int(1 + rng.range(0, 11)), Int(1 + rng.range(0, 4))};
            if (rng.below(2)) tv = -tv;
            LatticeSpec lat(GroupKind::SingleP, {p}, u, tv);
            ValuationProfile e;
            e.set(p, 9 + rng.range(0, 3));
            row(std::to_string(i), lat, AdelicBox{e},
                abs(tv) * Rational(Int(1 + rng.range(0, 3))));
        }
    } else {
        LatticeSpec lat = parse_lattice(a.lattice);
        std::optional<AdelicBox> box;
        std::optional<Rational> T;
        if (!a.box.empty()) box = parse_box(a.box);
        if (!a.big_t.empty()) T = parse_rational(a.big_t);
        row("0", lat, box, T);
    }
    emit(t, g);
}

struct LatticeCheckArgs {
    std::string lattice, v1, window;
};

void run_lattice_check(const LatticeCheckArgs& a, const GlobalOpts& g) {
    LatticeSpec lat = parse_lattice(a.lattice);
    AdelicBox v1 = parse_box(a.v1);
    Window1D w = parse_window(a.window);
    const bool discrete = lattice_discreteness_check(lat, v1, w);
    Table t = base_table(g, "lattice-check",
                         {{"lattice", lattice_str(lat)},
                          {"v1", v1.str()},
                          {"window", w.str(true)}});
    t.columns = {"discrete"};
    t.add_row({bool_str(discrete)});
    emit(t, g);
}

struct SolenoidArgs {
    std::string schedule, value, point, window;
    std::int64_t grid_den = 64;
};

void run_solenoid_rho(const SolenoidArgs& a, const GlobalOpts& g) {
    PrimeSchedule s = parse_prime_schedule(a.schedule);
    const SolPoint z = rho(parse_rational(a.value), s);
    Table t = base_table(g, "solenoid rho",
                         {{"schedule", s.str()}, {"value", a.value}, {"point", z.str()}});
    t.columns = {"n", "angle", "angle_dec"};
    for (std::size_t i = 0; i < z.angles.size(); ++i)
        t.add_row({std::to_string(i + 1), z.angles[i].str(), dec(z.angles[i])});
    emit(t, g);
}

void run_solenoid_lift(const SolenoidArgs& a, const GlobalOpts& g) {
    PrimeSchedule s = parse_prime_schedule(a.schedule);
    const SolPoint z = parse_solpoint(a.point);
    const LiftResult lr = lift(z, s);
    const bool ok = phi(lr.g, lr.r, s) == z;
    Table t = base_table(g, "solenoid lift", {{"schedule", s.str()}, {"point", z.str()}});
    t.columns = {"g", "r", "roundtrip_ok"};
    t.add_row({lr.g.value.str(), lr.r.str(), bool_str(ok)});
    emit(t, g);
}

void run_solenoid_section(const SolenoidArgs& a, const GlobalOpts& g) {
    PrimeSchedule s = parse_prime_schedule(a.schedule);
    Window1D w = parse_window(a.window);
    const bool ok = cross_section_check(w, s, a.grid_den);
    Table t = base_table(g, "solenoid section-check",
                         {{"schedule", s.str()},
                          {"window", w.str(true)},
                          {"grid_den", std::to_string(a.grid_den)}});
    t.columns = {"holds"};
    t.add_row({bool_str(ok)});
    emit(t, g);
}

struct FolnerCheckArgs {
    std::string schedule = "standard", k, u;
    int nmax = 8;
};

void run_folner_check(const FolnerCheckArgs& a, const GlobalOpts& g) {
    FolnerSchedule s = parse_folner_schedule(a.schedule);
    AdelicBox k = parse_box(a.k);
    Table t = base_table(g, "folner-check", {{"schedule", s.str()}, {"k", k.str()}});
    const bool with_core = !a.u.empty();
    t.columns = {"n", "box", "ratio", "ratio_dec"};
    if (with_core) {
        t.columns.push_back("core");
        t.columns.push_back("core_equals_box");
        t.add_meta("u", a.u);
    }
    AdelicBox u = with_core ? parse_box(a.u) : AdelicBox{};
    for (const auto& [n, ratio] : folner_diagnostic(s, k, a.nmax)) {
        const AdelicBox f = s.box_at(n);
        std::vector<std::string> row = {std::to_string(n), f.str(), ratio.str(), dec(ratio)};
        if (with_core) {
            const AdelicBox core = adapted_core(f, u);
            row.push_back(core.str());
            row.push_back(bool_str(core == f));
        }
        t.add_row(std::move(row));
    }
    emit(t, g);
}

} // namespace

/// Flat key=value config: each key becomes --key unless the flag was given
/// explicitly, so command-line flags always win.
std::vector<std::string> apply_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (config_path.empty()) return args;
    std::ifstream is(config_path);
    if (!is) throw adelic_lab::ParseError("cannot open config file: " + config_path);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw adelic_lab::ParseError("config line without '=': " + line);
        const std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (!present) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

int main(int argc, char** argv) {
    CLI::App app{"Exact cut-and-project point sets over the finite adeles: "
                 "Farey densities, sumset geometry, solenoid lifts"};
    app.set_version_flag("--cli-version", kVersion);
    app.fallthrough();
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "Flat key=value config file");

    GlobalOpts g;
    app.add_option("--format", g.format, "Output format: csv|json|plot-data");
    app.add_option("--output", g.output, "Output path (default stdout)");
    app.add_option("--seed", g.seed, "PRNG seed for randomized suites");

    FareyArgs farey;
    auto* farey_cmd = app.add_subcommand("farey", "Enumerate or count dilated Farey fractions");
    farey_cmd->add_option("--window", farey.window, "Window [a,b];[c,d]")->required();
    farey_cmd->add_option("--dilate", farey.dilate, "Dilation profile p:k,...");
    farey_cmd->add_option("--translate", farey.translate, "Window translation");
    farey_cmd->add_option("--folner", farey.folner, "Box exponents p:e,...");
    farey_cmd->add_flag("--count-only", farey.count_only, "Emit the closed-form count only");
    farey_cmd->add_option("--max-points", farey.cap, "Enumeration cap");

    DensityArgs density;
    auto* density_cmd = app.add_subcommand("density", "Exact density table along a schedule");
    density_cmd->add_option("--window", density.window)->required();
    density_cmd->add_option("--dilate", density.dilate);
    density_cmd->add_option("--translate", density.translate);
    density_cmd->add_option("--schedule", density.schedule, "standard|full[:P]|p[+delay],...");
    density_cmd->add_option("--nmax", density.nmax);

    DoublingArgs doubling;
    auto* doubling_cmd = app.add_subcommand("doubling", "Density table for P and P - P");
    doubling_cmd->add_option("--window", doubling.window)->required();
    doubling_cmd->add_option("--dilate", doubling.dilate);
    doubling_cmd->add_option("--translate", doubling.translate);
    doubling_cmd->add_option("--schedule", doubling.schedule);
    doubling_cmd->add_option("--nmax", doubling.nmax);
    doubling_cmd->add_option("--step", doubling.step, "Generating-box exponent step");
    doubling_cmd->add_option("--max-points", doubling.cap);

    DiffsetArgs diffset;
    auto* diffset_cmd = app.add_subcommand("diffset", "Difference set inside a box");
    diffset_cmd->add_option("--window", diffset.window)->required();
    diffset_cmd->add_option("--dilate", diffset.dilate);
    diffset_cmd->add_option("--translate", diffset.translate);
    diffset_cmd->add_option("--box", diffset.box);
    diffset_cmd->add_option("--step", diffset.step);
    diffset_cmd->add_option("--max-points", diffset.cap);

    ExceptionalArgs exceptional;
    auto* exc_cmd = app.add_subcommand("exceptional", "Difference-set exceptional points");
    exc_cmd->add_option("--window", exceptional.window)->required();
    exc_cmd->add_option("--cap", exceptional.cap, "Denominator cap");

    KneserArgs kneser;
    auto* kneser_cmd = app.add_subcommand("kneser", "Arc-set doubling bound and classifier");
    kneser_cmd->add_option("--arcs", kneser.arcs, "Arcs a,b;c,d");
    kneser_cmd->add_flag("--classify", kneser.classify, "Run the equality classifier");
    kneser_cmd->add_option("--random", kneser.random, "Randomized suite size");
    kneser_cmd->add_option("--zn", kneser.zn, "Z_N discretization cross-check modulus");
    kneser_cmd->add_option("--max-arcs", kneser.max_arcs);

    BmArgs bm;
    auto* bm_cmd = app.add_subcommand("bm", "Brunn-Minkowski doubling for box unions");
    bm_cmd->add_option("--boxes", bm.boxes, "[a,b]x[c,d];...");
    bm_cmd->add_option("--grid", bm.grid);
    bm_cmd->add_option("--random", bm.random, "Randomized d=1 suite size");

    SumsetArgs sumset;
    auto* sumset_cmd = app.add_subcommand("sumset-r", "Higher-order sumset volume");
    sumset_cmd->add_option("--window", sumset.window)->required();
    sumset_cmd->add_option("--r", sumset.order, "Order, 2 <= r <= 4");
    sumset_cmd->add_option("--grid", sumset.grid);

    CapsetArgs capset;
    auto* capset_cmd = app.add_subcommand("capset", "Cut-and-project points of a lattice");
    capset_cmd->add_option("--lattice", capset.lattice)->required();
    capset_cmd->add_option("--window", capset.window)->required();
    capset_cmd->add_option("--box", capset.box);
    capset_cmd->add_option("--max-points", capset.cap);

    ReturnTimesArgs rtimes;
    auto* rt_cmd = app.add_subcommand("return-times", "Return-time set of a basepoint");
    rt_cmd->add_option("--lattice", rtimes.lattice)->required();
    rt_cmd->add_option("--window", rtimes.window)->required();
    rt_cmd->add_option("--box", rtimes.box);
    rt_cmd->add_option("--base-g", rtimes.base_g, "Rational tag; empty = profile-only");
    rt_cmd->add_option("--base-h", rtimes.base_h)->required();
    rt_cmd->add_option("--max-points", rtimes.cap);

    CovolArgs covol;
    auto* covol_cmd = app.add_subcommand("covol", "Covolume formula and counting oracle");
    covol_cmd->add_option("--lattice", covol.lattice);
    covol_cmd->add_option("--box", covol.box, "Counting box");
    covol_cmd->add_option("--T", covol.big_t, "Real truncation");
    covol_cmd->add_option("--random", covol.random, "Randomized suite size");

    LatticeCheckArgs lcheck;
    auto* lcheck_cmd = app.add_subcommand("lattice-check", "Discreteness of Z[1/Q](u,t)");
    lcheck_cmd->add_option("--lattice", lcheck.lattice)->required();
    lcheck_cmd->add_option("--v1", lcheck.v1, "Separating box");
    lcheck_cmd->add_option("--window", lcheck.window)->required();

    SolenoidArgs sol;
    auto* sol_cmd = app.add_subcommand("solenoid", "Truncated solenoid computations");
    sol_cmd->require_subcommand(1);
    auto* rho_cmd = sol_cmd->add_subcommand("rho", "Embed a rational into the solenoid");
    rho_cmd->add_option("--schedule", sol.schedule, "p^N or q1,q2,...")->required();
    rho_cmd->add_option("--value", sol.value)->required();
    auto* lift_cmd = sol_cmd->add_subcommand("lift", "Invert phi on a compatible point");
    lift_cmd->add_option("--schedule", sol.schedule)->required();
    lift_cmd->add_option("--point", sol.point, "Angles t1;t2;...")->required();
    auto* sect_cmd = sol_cmd->add_subcommand("section-check", "Cross-section identity");
    sect_cmd->add_option("--schedule", sol.schedule)->required();
    sect_cmd->add_option("--window", sol.window)->required();
    sect_cmd->add_option("--grid-den", sol.grid_den);

    FolnerCheckArgs folner;
    auto* folner_cmd = app.add_subcommand("folner-check", "Strong Folner ratio diagnostics");
    folner_cmd->add_option("--schedule", folner.schedule);
    folner_cmd->add_option("--k", folner.k, "Compact box K")->required();
    folner_cmd->add_option("--u", folner.u, "Adaptedness box U");
    folner_cmd->add_option("--nmax", folner.nmax);

    try {
        std::vector<std::string> args = apply_config(argc, argv);
        std::vector<const char*> cargs;
        cargs.reserve(args.size());
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (farey_cmd->parsed()) run_farey(farey, g);
        else if (density_cmd->parsed()) run_density(density, g);
        else if (doubling_cmd->parsed()) run_doubling(doubling, g);
        else if (diffset_cmd->parsed()) run_diffset(diffset, g);
        else if (exc_cmd->parsed()) run_exceptional(exceptional, g);
        else if (kneser_cmd->parsed()) run_kneser(kneser, g);
        else if (bm_cmd->parsed()) run_bm(bm, g);
        else if (sumset_cmd->parsed()) run_sumset(sumset, g);
        else if (capset_cmd->parsed()) run_capset(capset, g);
        else if (rt_cmd->parsed()) run_return_times(rtimes, g);
        else if (covol_cmd->parsed()) run_covol(covol, g);
        else if (lcheck_cmd->parsed()) run_lattice_check(lcheck, g);
        else if (sol_cmd->parsed()) {
            if (rho_cmd->parsed()) run_solenoid_rho(sol, g);
            else if (lift_cmd->parsed()) run_solenoid_lift(sol, g);
            else if (sect_cmd->parsed()) run_solenoid_section(sol, g);
        } else if (folner_cmd->parsed()) {
            run_folner_check(folner, g);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const CapOverflow& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
