#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "nsdgt/error.hpp"
#include "nsdgt/flops.hpp"
#include "nsdgt/io.hpp"
#include "nsdgt/metaplectic.hpp"
#include "nsdgt/nonsep.hpp"

using namespace nsdgt;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kNumeric = 3, kInfeasible = 4 };

struct LatticeArgs {
  Index a = 0, M = 0, lp = 0, lq = 1;

  void add(CLI::App* cmd) {
    cmd->add_option("--a", a, "time shift")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--M", M, "number of channels")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--lp", lp, "lambda1")->check(CLI::NonNegativeNumber);
    cmd->add_option("--lq", lq, "lambda2")->check(CLI::PositiveNumber);
  }
  GaborLattice lattice(Index L) const { return GaborLattice::from_params(L, a, M, lp, lq); }
};

struct WindowArgs {
  std::string spec = "gauss";
  double tfr = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--window", spec, "'gauss' or a signal file; shorter files are centered FIR windows");
    cmd->add_option("--tfr", tfr, "Gaussian time-frequency ratio (default a*M/L)");
  }
  Window make(const GaborLattice& lat) const {
    const Index L = lat.L();
    if (spec == "gauss")
      return pgauss(L, tfr > 0 ? tfr : static_cast<double>(lat.a() * lat.M()) / static_cast<double>(L));
    CVector taps = read_signal_file(spec);
    const Index Lg = static_cast<Index>(taps.size());
    if (Lg == L) return Window(std::move(taps));
    if (Lg > L) throw InvalidArgument("window file longer than the signal (" + std::to_string(Lg) + " > " +
                                      std::to_string(L) + ")");
    return Window::fir(taps, -(Lg / 2), L);
  }
};

void report_error(const std::string& what) { std::cerr << "error: " << what << '\n'; }

double rel_err(std::span<const Complex> x, std::span<const Complex> ref) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) num += std::norm(x[i] - ref[i]), den += std::norm(ref[i]);
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

std::optional<double> model_flops(Algorithm alg, const GaborLattice& lat, const Window& g, std::optional<Index> Lb) {
  const bool fir = g.is_fir();
  const Index Lg = g.support_length();
  switch (alg) {
    case Algorithm::Separable:
      return flops_rect_full(lat.L(), lat.a(), lat.M());
    case Algorithm::SeparableFir:
      return flops_rect_fir(lat.L(), lat.a(), lat.M(), Lg);
    case Algorithm::Multiwin:
      return fir ? flops_table(lat, FlopAlgorithm::MwFir, Lg).flops : flops_table(lat, FlopAlgorithm::MwFull).flops;
    case Algorithm::Snf:
      return flops_table(lat, FlopAlgorithm::Snf).flops;
    case Algorithm::Shear:
      return flops_shear(lat).flops;
    case Algorithm::ShearOla: {
      if (!Lb) Lb = pick_block_length(lat, Lg);
      if (!Lb) return std::nullopt;
      const Index Lmin = min_length(lat.a(), lat.M(), lat.lambda1(), lat.lambda2());
      const Index Lgx = (Lg + Lmin - 1) / Lmin * Lmin;
      auto sd = shearfind(*Lb + Lgx, lat.a(), lat.M(), lat.lambda1(), lat.lambda2());
      return flops_table(lat, sd.s0 ? FlopAlgorithm::ShearOlaFreq : FlopAlgorithm::ShearOlaNoFreq, Lgx, *Lb).flops;
    }
    default:
      return std::nullopt;
  }
}

std::string shear_summary(const GaborLattice& lat) {
  auto d = shearfind(lat);
  std::ostringstream os;
  os << "s0=" << d.s0 << " s1=" << d.s1 << " a_r=" << d.a_r << " b_r=" << d.b_r
     << " freq_shear=" << (d.freq_shear_needed() ? "yes" : "no") << " time_shear=" << (d.time_shear_needed() ? "yes" : "no");
  return os.str();
}

// ---- dgt

struct DgtCmd {
  std::string in, out, algorithm = "auto";
  LatticeArgs lat;
  WindowArgs win;
  Index multiwin_max = 4;

  int run() const {
    CVector f = read_signal_file(in);
    const auto L = static_cast<Index>(f.size());
    const auto lattice = lat.lattice(L);
    const Window g = win.make(lattice);
    Algorithm alg = parse_algorithm(algorithm);
    DispatchConfig cfg;
    cfg.multiwin_max_lambda2 = multiwin_max;
    std::optional<Index> Lb;
    bool automatic = alg == Algorithm::Auto;
    if (automatic) {
      auto d = choose_algorithm(lattice, g, cfg);
      alg = d.algorithm;
      Lb = d.block_length;
    }
    std::cerr << "lattice: " << lattice.str() << '\n';
    std::cerr << "algorithm: " << to_string(alg) << (automatic ? " (auto)" : "") << '\n';
    std::cerr << "shear: " << shear_summary(lattice) << '\n';
    if (auto fl = model_flops(alg, lattice, g, Lb)) std::cerr << "flops_model: " << format_double(*fl) << '\n';
    else std::cerr << "flops_model: n/a\n";
    CoefGrid c = dgtns(f, g, lattice, alg, cfg);
    write_coefs_file(out, c);
    return kOk;
  }
};

// ---- idgt

struct IdgtCmd {
  std::string in, out, reference;
  LatticeArgs lat;
  WindowArgs win;
  bool dual = false;

  int run() const {
    CoefGrid c = read_coefs_file(in);
    if (c.channels() != lat.M) throw InvalidArgument("coefficient file has " + std::to_string(c.channels()) +
                                                     " channels, expected M=" + std::to_string(lat.M));
    const Index L = lat.a * c.steps();
    const auto lattice = lat.lattice(L);
    Window g = win.make(lattice);
    if (dual) g = gabdualns(g, lattice);
    CVector f = idgtns(c, g, lattice);
    write_signal_file(out, f);
    if (!reference.empty()) {
      CVector ref = read_signal_file(reference);
      if (ref.size() != f.size()) throw InvalidArgument("reference length differs from reconstruction");
      std::cerr << "reconstruction_error: " << format_double(rel_err(f, ref)) << '\n';
    }
    return kOk;
  }
};

// ---- gabdual / gabtight

struct WindowCmd {
  std::string out, method = "shear";
  LatticeArgs lat;
  WindowArgs win;
  Index L = 0;
  bool verify = false;
  bool tight = false;
  unsigned seed = 0;

  Index length() const {
    if (win.spec != "gauss") {
      Index n = static_cast<Index>(read_signal_file(win.spec).size());
      return L > 0 ? L : n;
    }
    if (L <= 0) throw InvalidArgument("--L is required for a Gaussian window");
    return L;
  }

  int run() const {
    const auto lattice = lat.lattice(length());
    const Window g = win.make(lattice);
    Window out_w;
    if (tight) out_w = gabtightns(g, lattice);
    else if (method == "cg") out_w = gabdualns_cg(g, lattice);
    else if (method == "shear") out_w = gabdualns(g, lattice);
    else throw InvalidArgument("unknown method '" + method + "'");
    write_signal_file(out, out_w.values());
    std::cerr << "lattice: " << lattice.str() << '\n';
    if (!verify) return kOk;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    CVector f(static_cast<std::size_t>(lattice.L()));
    for (auto& v : f) v = {nd(rng), nd(rng)};
    double err;
    if (tight) {
      err = rel_err(frame_op_apply(f, out_w, lattice), f);
      std::cerr << "frame_operator_identity_error: " << format_double(err) << '\n';
    } else {
      err = rel_err(idgtns(dgtns_shear(f, g, lattice), out_w, lattice), f);
      std::cerr << "reconstruction_error: " << format_double(err) << '\n';
    }
    if (!(err <= 1e-9)) {
      report_error("verification failed");
      return kNumeric;
    }
    std::cerr << "verify: ok\n";
    return kOk;
  }
};

// ---- latinfo

struct LatinfoCmd {
  LatticeArgs lat;
  Index L = 0;
  bool as_json = false;

  int run() const {
    const Index Lmin = min_length(lat.a, lat.M, lat.lp, lat.lq);
    if (lat.lp >= lat.lq || gcd(lat.lp, lat.lq) != 1)
      throw InvalidArgument("lambda must be an irreducible fraction lp/lq with 0 <= lp < lq");
    const auto ns = noshear_factor(lat.a, lat.M, lat.lp, lat.lq);
    const bool separable = lat.lp == 0;
    json j;
    j["a"] = lat.a;
    j["M"] = lat.M;
    j["lambda1"] = lat.lp;
    j["lambda2"] = lat.lq;
    j["L_min"] = Lmin;
    j["separable"] = separable;
    j["no_freq_shear"] = {{"c1", ns.c1}, {"factor", ns.factor}, {"stride", Lmin * ns.factor}};

    const Index len = L > 0 ? L : Lmin;
    j["L"] = len;
    const bool feasible = len % Lmin == 0;
    j["feasible"] = feasible;
    if (!feasible) {
      const Index lo = len / Lmin * Lmin, hi = lo + Lmin;
      j["nearest_feasible"] = lo > 0 ? json::array({lo, hi}) : json::array({hi});
    } else {
      const auto l = lat.lattice(len);
      const auto k = constants(l);
      const auto U = upper_form(l);
      const auto d = shearfind(l);
      const auto mw = multiwin_decomp(l);
      j["normal_form"] = {{"a", l.a()}, {"b", l.b()}, {"s", l.s()}};
      j["upper_form"] = json::array({json::array({U.a11(), U.a12()}), json::array({U.a21(), U.a22()})});
      j["constants"] = {{"c", k.c}, {"d", k.d}, {"p", k.p}, {"q", k.q}};
      j["redundancy"] = l.redundancy();
      j["shear"] = {{"s0", d.s0},
                    {"s1", d.s1},
                    {"a_r", d.a_r},
                    {"b_r", d.b_r},
                    {"freq_shear", d.freq_shear_needed()},
                    {"time_shear", d.time_shear_needed()}};
      json offs = json::array();
      for (auto o : mw.offsets) offs.push_back(json::array({o.x, o.omega}));
      j["multiwindow"] = {{"windows", mw.lambda2}, {"base_a", mw.base_a}, {"base_b", mw.base_b}, {"offsets", offs}};
    }

    if (as_json) {
      std::cout << j.dump(2) << '\n';
      return kOk;
    }
    auto& o = std::cout;
    o << "a=" << lat.a << " M=" << lat.M << " lambda=" << lat.lp << "/" << lat.lq << '\n';
    o << "L_min: " << Lmin << '\n';
    if (separable) o << "separable; no shear required\n";
    o << "no-frequency-shear: c1=" << ns.c1 << " factor=" << ns.factor << " (lengths n*" << Lmin * ns.factor << ")\n";
    if (!feasible) {
      o << "L=" << len << " infeasible; nearest feasible lengths:";
      for (auto& v : j["nearest_feasible"]) o << ' ' << v.get<Index>();
      o << '\n';
      return kOk;
    }
    o << "L: " << len << (L > 0 ? "" : " (minimal)") << '\n';
    o << "normal form: a=" << j["normal_form"]["a"] << " b=" << j["normal_form"]["b"] << " s=" << j["normal_form"]["s"]
      << '\n';
    o << "upper form: " << upper_form(lat.lattice(len)).str() << '\n';
    o << "c=" << j["constants"]["c"] << " d=" << j["constants"]["d"] << " p=" << j["constants"]["p"]
      << " q=" << j["constants"]["q"] << '\n';
    o << "shear: " << shear_summary(lat.lattice(len)) << '\n';
    o << "multiwindow: " << j["multiwindow"]["windows"] << " windows on (" << j["multiwindow"]["base_a"] << ", "
      << j["multiwindow"]["base_b"] << "), offsets";
    for (auto& v : j["multiwindow"]["offsets"]) o << " (" << v[0] << "," << v[1] << ")";
    o << '\n';
    return kOk;
  }
};

// ---- bench

struct BenchCmd {
  Index a = 0, M = 0, lq_max = 30, L_factor = 2520;
  int repeats = 5;
  unsigned seed = 0;
  std::string preset, out, L_rule = "fixed";
  bool no_timing = false;

  int run() const {
    std::vector<std::pair<Index, Index>> pairs;
    if (preset == "fig2") pairs = {{32, 64}, {40, 60}, {60, 80}};
    else if (!preset.empty()) throw InvalidArgument("unknown preset '" + preset + "'");
    else if (a > 0 && M > 0) pairs = {{a, M}};
    else throw InvalidArgument("bench needs --a and --M or --preset fig2");

    std::ofstream file;
    if (!out.empty()) {
      file.open(out, std::ios::binary);
      if (!file) throw FormatError("cannot open '" + out + "' for writing");
    }
    std::ostream& os = out.empty() ? std::cout : file;
    CrossoverOptions opt;
    opt.lambda2_max = lq_max;
    opt.L_factor = L_factor;
    opt.minimal_length = L_rule == "minimal";
    opt.repeats = repeats;
    opt.seed = seed;
    opt.measure = !no_timing;
    opt.log = [](const std::string& s) { std::cerr << s << '\n'; };
    bool header = true;
    for (auto [pa, pm] : pairs) {
      auto rows = crossover_scan(pa, pm, opt);
      write_crossover_csv(os, rows, header);
      header = false;
      os.flush();
    }
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gabor transforms on nonseparable lattices"};
  app.require_subcommand(1);

  DgtCmd dgt;
  auto* c_dgt = app.add_subcommand("dgt", "analysis: signal file -> coefficient file");
  c_dgt->add_option("--in", dgt.in)->required();
  c_dgt->add_option("--out", dgt.out)->required();
  dgt.lat.add(c_dgt);
  dgt.win.add(c_dgt);
  c_dgt->add_option("--algorithm", dgt.algorithm)
      ->check(CLI::IsMember({"auto", "shear", "multiwin", "snf", "naive", "separable", "separable-fir", "shear-ola"}));
  c_dgt->add_option("--multiwin-max", dgt.multiwin_max, "largest lambda2 sent to the multiwindow algorithm by auto");

  IdgtCmd idgt;
  auto* c_idgt = app.add_subcommand("idgt", "synthesis: coefficient file -> signal file");
  c_idgt->add_option("--in", idgt.in)->required();
  c_idgt->add_option("--out", idgt.out)->required();
  idgt.lat.add(c_idgt);
  idgt.win.add(c_idgt);
  c_idgt->add_flag("--dual", idgt.dual, "synthesize with the canonical dual of --window");
  c_idgt->add_option("--reference", idgt.reference, "signal file; report the relative reconstruction error");

  WindowCmd gd;
  auto* c_gd = app.add_subcommand("gabdual", "canonical dual window");
  WindowCmd gt;
  gt.tight = true;
  auto* c_gt = app.add_subcommand("gabtight", "canonical tight window");
  for (auto [cmd, w] : {std::pair{c_gd, &gd}, std::pair{c_gt, &gt}}) {
    cmd->add_option("--out", w->out)->required();
    w->lat.add(cmd);
    w->win.add(cmd);
    cmd->add_option("--L", w->L, "signal length (required for the Gaussian)");
    cmd->add_flag("--verify", w->verify, "check the result on a random signal");
    cmd->add_option("--seed", w->seed);
  }
  c_gd->add_option("--method", gd.method)->check(CLI::IsMember({"shear", "cg"}));

  LatinfoCmd li;
  auto* c_li = app.add_subcommand("latinfo", "lattice structure report");
  li.lat.add(c_li);
  c_li->add_option("--L", li.L);
  c_li->add_flag("--json", li.as_json);

  BenchCmd bench;
  auto* c_b = app.add_subcommand("bench", "flop model and timings over a lambda2 sweep (CSV)");
  c_b->add_option("--a", bench.a)->check(CLI::PositiveNumber);
  c_b->add_option("--M", bench.M)->check(CLI::PositiveNumber);
  c_b->add_option("--lq-max", bench.lq_max)->check(CLI::PositiveNumber);
  c_b->add_option("--L-factor", bench.L_factor)->check(CLI::PositiveNumber);
  c_b->add_option("--repeats", bench.repeats)->check(CLI::PositiveNumber);
  c_b->add_option("--seed", bench.seed);
  c_b->add_option("--preset", bench.preset)->check(CLI::IsMember({"fig2"}));
  c_b->add_option("--out", bench.out);
  c_b->add_option("--L-rule", bench.L_rule, "fixed: L = lcm(a,M)*factor; minimal: L = lambda2*lcm(a,M)*factor")
      ->check(CLI::IsMember({"fixed", "minimal"}));
  c_b->add_flag("--no-timing", bench.no_timing, "model columns only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c_dgt->parsed()) return dgt.run();
    if (c_idgt->parsed()) return idgt.run();
    if (c_gd->parsed()) return gd.run();
    if (c_gt->parsed()) return gt.run();
    if (c_li->parsed()) return li.run();
    if (c_b->parsed()) return bench.run();
  } catch (const InfeasibleLength& e) {
    report_error(e.what());
    return kInfeasible;
  } catch (const NotAFrame& e) {
    report_error(e.what());
    return kNumeric;
  } catch (const InvalidArgument& e) {
    report_error(e.what());
    return kUsage;
  } catch (const FormatError& e) {
    report_error(e.what());
    return kUsage;
  } catch (const std::exception& e) {
    report_error(e.what());
    return kNumeric;
  }
  return kUsage;
}
