// Command-line front end: classification, characteristic-function grids,
// sampling, process simulation, and the number-theoretic certificates.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "gouq/continuity.hpp"
#include "gouq/divisibility.hpp"
#include "gouq/mu.hpp"
#include "gouq/params.hpp"
#include "gouq/rho.hpp"
#include "gouq/simulate.hpp"
#include "gouq/stats.hpp"

using json = nlohmann::ordered_json;
using namespace gouq;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string c_str = "2";
  long long c_num = 0, c_den = 0;
  std::string p_str, q_str, r_str;
  std::string u_str, v_str, w_str;
  std::string pisot_poly;
  bool ps_assumption = false;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint64_t n = 10000;
  bool n_given = false;
  std::string out;
  std::string format;  // csv | json; per-command default otherwise
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed_given) return o.seed;
  if (const char* env = std::getenv("GOUQ_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw Error(Errc::InvalidRate, "GOUQ_SEED is not a valid integer");
    }
  }
  return 0;
}

ScaleC parse_c(const Options& o) {
  if (o.c_den != 0) return ScaleC::rational(o.c_num, o.c_den);
  const auto exact = parse_decimal(o.c_str);
  if (exact && denominator(*exact) == 1) {
    const long long v = numerator(*exact).convert_to<long long>();
    return ScaleC::integer(v);
  }
  return ScaleC::floating(std::stod(o.c_str));
}

std::vector<long long> parse_poly(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  if (out.empty()) throw Error(Errc::NotPisot, "empty polynomial");
  return out;
}

ModelParams parse_params(const Options& o) {
  const ScaleC c = parse_c(o);
  if (!o.u_str.empty() || !o.v_str.empty() || !o.w_str.empty()) {
    const auto u = parse_decimal(o.u_str.empty() ? "0" : o.u_str);
    const auto v = parse_decimal(o.v_str.empty() ? "0" : o.v_str);
    const auto w = parse_decimal(o.w_str.empty() ? "0" : o.w_str);
    if (u && v && w) {
      const Rational total = *u + *v + *w;
      if (total <= 0) throw Error(Errc::InvalidRate, "rates sum to zero");
      RawRates raw{to_double(*u), to_double(*v), to_double(*w)};
      normalize(raw, c);  // surface rate errors with their own codes
      return make_params_exact(c, *u / total, *v / total, *w / total);
    }
    return normalize({std::stod(o.u_str.empty() ? "0" : o.u_str),
                      std::stod(o.v_str.empty() ? "0" : o.v_str),
                      std::stod(o.w_str.empty() ? "0" : o.w_str)},
                     c);
  }
  if (o.q_str.empty() || o.r_str.empty())
    throw Error(Errc::InvalidRate, "provide --q and --r (or --u/--v/--w)");
  const auto q = parse_decimal(o.q_str);
  const auto r = parse_decimal(o.r_str);
  const auto p = o.p_str.empty() ? std::optional<Rational>(std::nullopt)
                                 : parse_decimal(o.p_str);
  if (q && r && (o.p_str.empty() || p)) {
    const Rational pe = p ? *p : Rational(1) - *q - *r;
    return make_params_exact(c, pe, *q, *r);
  }
  const double qd = std::stod(o.q_str);
  const double rd = std::stod(o.r_str);
  const double pd = o.p_str.empty() ? 1.0 - qd - rd : std::stod(o.p_str);
  return make_params(c, pd, qd, rd);
}

std::optional<PisotCertificate> certificate_from(const Options& o,
                                                 const ScaleC& c,
                                                 bool fall_back_to_catalog) {
  if (!o.pisot_poly.empty())
    return certify_pisot(c.value, parse_poly(o.pisot_poly));
  if (fall_back_to_catalog) return builtin_pisot_certificate(c);
  return std::nullopt;
}

json params_json(const ModelParams& mp) {
  json j;
  j["c"] = mp.c.value;
  j["c_tag"] = to_string(mp.c.tag);
  j["p"] = mp.p;
  j["q"] = mp.q;
  j["r"] = mp.r;
  j["exact_pqr"] = mp.has_exact_pqr();
  return j;
}

json verdict_json(const Verdict& v) {
  return json{{"decision", to_string(v.decision)},
              {"rule", v.rule},
              {"witness", v.witness}};
}

json meta_json(const Options& o, const ModelParams* mp) {
  json j;
  j["version"] = kVersion;
  j["seed"] = resolve_seed(o);
  if (mp) j["params"] = params_json(*mp);
  return j;
}

void emit(const Options& o, const std::string& payload) {
  if (o.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(Errc::InvalidRate, "cannot open output file " + o.out);
  f << payload;
}

std::string csv_meta(const Options& o, const ModelParams* mp) {
  std::ostringstream os;
  os.precision(17);
  os << "# gouq " << kVersion << "\n";
  if (mp)
    os << "# c=" << mp->c.value << " tag=" << to_string(mp->c.tag)
       << " p=" << mp->p << " q=" << mp->q << " r=" << mp->r << "\n";
  os << "# seed=" << resolve_seed(o) << "\n";
  return os.str();
}

int cmd_classify(const Options& o) {
  const ModelParams mp = parse_params(o);
  std::optional<PisotCertificate> cert;
  try {
    cert = certificate_from(o, mp.c, true);
  } catch (const Error&) {
    cert = std::nullopt;  // a bad polynomial disables the rule, not the run
  }
  const Verdict vr = classify_rho_id(mp);
  const Verdict vm = classify_mu_id(mp);
  const Verdict vs = classify_sym_id(mp);
  const ContinuityVerdict vc = classify_continuity(mp, cert, o.ps_assumption);

  json j;
  j["meta"] = meta_json(o, &mp);
  j["id_rho"] = verdict_json(vr);
  j["id_mu"] = verdict_json(vm);
  j["id_sym"] = verdict_json(vs);
  json cont;
  cont["decision"] = to_string(vc.decision);
  cont["rule"] = vc.rule;
  cont["entropy"] = vc.entropy;
  cont["log_c"] = vc.log_c;
  if (std::isnan(vc.dimension_bound))
    cont["dim_bound"] = nullptr;
  else
    cont["dim_bound"] = vc.dimension_bound;
  j["continuity"] = cont;
  if (std::isnan(vc.dimension_bound))
    j["dim_bound"] = nullptr;
  else
    j["dim_bound"] = vc.dimension_bound;
  j["reasons"] = json::array({vr.rule, vm.rule, vs.rule, vc.rule});
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_cf(const Options& o, double zmin, double zmax, std::uint64_t steps) {
  if (!(zmin <= zmax) || steps == 0)
    throw Error(Errc::InvalidRate, "need zmin <= zmax and steps >= 1");
  const ModelParams mp = parse_params(o);
  const auto rows = cf_grid(mp, zmin, zmax, steps, o.tol);
  std::ostringstream os;
  os.precision(17);
  os << csv_meta(o, &mp);
  os << "z,re_mu,im_mu,abs_mu\n";
  for (const auto& row : rows)
    os << row.z << ',' << row.value.real() << ',' << row.value.imag() << ','
       << std::abs(row.value) << "\n";
  emit(o, os.str());
  return 0;
}

int cmd_sample(const Options& o, std::uint64_t depth_flag) {
  const ModelParams mp = parse_params(o);
  SeriesSampler s{mp, depth_flag ? depth_flag : default_series_depth(mp),
                  resolve_seed(o)};
  const auto xs = mu_sample(s, o.n);
  std::ostringstream os;
  os.precision(17);
  os << csv_meta(o, &mp);
  os << "# depth=" << s.depth << "\n";
  for (double x : xs) os << x << "\n";
  emit(o, os.str());
  return 0;
}

RawRates rates_from(const Options& o) {
  if (o.u_str.empty() && o.v_str.empty() && o.w_str.empty())
    throw Error(Errc::InvalidRate, "simulation needs --u/--v/--w rates");
  return {o.u_str.empty() ? 0 : std::stod(o.u_str),
          o.v_str.empty() ? 0 : std::stod(o.v_str),
          o.w_str.empty() ? 0 : std::stod(o.w_str)};
}

int cmd_simulate(const Options& o, std::uint64_t horizon,
                 const std::string& validate, double tv_threshold,
                 double ks_alpha) {
  const double c = parse_c(o).value;
  const RawRates raw = rates_from(o);
  if (validate.empty()) {
    const auto records = simulate_path_records(raw, c, horizon, resolve_seed(o));
    std::ostringstream os;
    os.precision(17);
    os << csv_meta(o, nullptr);
    os << "# u=" << raw.u << " v=" << raw.v << " w=" << raw.w << " c=" << c
       << " horizon=" << horizon << "\n";
    os << "time,mark,N,Y,running_integral\n";
    for (const auto& rec : records)
      os << rec.time << ',' << to_string(rec.mark) << ',' << rec.n_after << ','
         << rec.y_after << ',' << rec.running_integral << "\n";
    emit(o, os.str());
    return 0;
  }
  json j;
  j["meta"] = meta_json(o, nullptr);
  bool pass = true;
  if (validate == "innovation") {
    const auto rep = validate_innovation_law(raw, c, o.n, resolve_seed(o));
    j["kind"] = "innovation";
    j["nsamples"] = rep.nsamples;
    j["tv_distance"] = rep.tv_distance;
    j["tv_threshold"] = tv_threshold;
    j["chi2"] = rep.chi2;
    j["chi2_cells"] = rep.chi2_cells;
    pass = rep.tv_distance < tv_threshold;
  } else if (validate == "series") {
    const auto rep = validate_series_equivalence(raw, c, o.n, resolve_seed(o));
    j["kind"] = "series";
    j["nsamples"] = rep.nsamples;
    j["ks_statistic"] = rep.ks_statistic;
    j["ks_pvalue"] = rep.ks_pvalue;
    j["ks_alpha"] = ks_alpha;
    j["mean_paths"] = rep.mean_paths;
    j["mean_series"] = rep.mean_series;
    j["expected_mean"] = rep.expected_mean;
    pass = rep.ks_pvalue > ks_alpha;
  } else {
    throw Error(Errc::InvalidRate, "--validate must be innovation or series");
  }
  j["pass"] = pass;
  emit(o, j.dump(2) + "\n");
  return pass ? 0 : 3;
}

int cmd_katti(const Options& o) {
  const ModelParams mp = parse_params(o);
  const std::size_t nmax = o.n_given ? o.n : 60;
  const DiscretePmf pmf =
      rho_pmf(mp, std::max<std::size_t>(nmax, rho_default_kmax(mp)));
  const KattiSequence seq = katti(pmf, nmax);
  json j;
  j["meta"] = meta_json(o, &mp);
  j["coefficients"] = seq.coefficients;
  if (seq.first_negative_index) {
    j["first_negative_index"] = *seq.first_negative_index;
    j["first_negative_value"] = seq.first_negative_value;
  } else {
    j["first_negative_index"] = nullptr;
  }
  j["infinitely_divisible_up_to_nmax"] = !seq.first_negative_index.has_value();
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_levy(const Options& o, std::uint64_t nmax, std::uint64_t mmax) {
  const ModelParams mp = parse_params(o);
  const SignedPointMeasure m = mu_levy_measure(mp, nmax, mmax);
  json j;
  j["meta"] = meta_json(o, &mp);
  j["mode"] = m.mode == SignedPointMeasure::Mode::ExactRational
                  ? "exact-rational"
                  : "float-distinct";
  j["total_abs_weight"] = m.total_abs_weight;
  j["atom_tail_bound"] = m.atom_tail_bound;
  j["complete_above"] = m.complete_above;
  json atoms = json::array();
  for (const auto& atom : m.atoms) {
    json a;
    if (atom.location_exact) {
      a["location_num"] = numerator(*atom.location_exact).str();
      a["location_den"] = denominator(*atom.location_exact).str();
    } else {
      a["location_float"] = atom.location;
    }
    a["weight"] = atom.weight;
    atoms.push_back(a);
  }
  j["atoms"] = atoms;
  try {
    const auto witness = negative_atom_witness(m);
    if (witness) {
      j["negative_witness"] = {{"location", witness->location},
                               {"weight", witness->weight}};
      j["certifies_non_divisible"] = true;
    } else {
      j["negative_witness"] = nullptr;
      j["certifies_non_divisible"] = false;
    }
  } catch (const Error& e) {
    j["negative_witness"] = nullptr;
    j["certifies_non_divisible"] = nullptr;
    j["witness_error"] = e.what();
  }
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_entropy(const Options& o) {
  const ModelParams mp = parse_params(o);
  const double h = rho_entropy(mp);
  if (o.format == "json") {
    json j;
    j["meta"] = meta_json(o, &mp);
    j["entropy"] = h;
    if (mp.q > 0) {
      j["log_c"] = std::log(mp.c.value);
      j["dim_bound"] = dim_bound(mp);
    }
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os.precision(15);
    os << h << "\n";
    emit(o, os.str());
  }
  return 0;
}

int cmd_tevolution(const Options& o) {
  const ModelParams mp = parse_params(o);
  std::optional<PisotCertificate> cert;
  if (!o.pisot_poly.empty())
    cert = certify_pisot(mp.c.value, parse_poly(o.pisot_poly));
  const SingularityThreshold th = power_singularity_threshold(mp, cert);
  json j;
  j["meta"] = meta_json(o, &mp);
  if (std::isinf(th.t_low))
    j["t_low"] = "infinity";
  else
    j["t_low"] = th.t_low;
  j["rule"] = th.rule;
  j["log_c"] = std::log(mp.c.value);
  j["entropy_at_1"] = rho_power_entropy(mp, 1.0);
  json trace = json::array();
  for (const auto& [t, h] : th.trace) trace.push_back(json::array({t, h}));
  j["trace"] = trace;
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_pisot(const Options& o) {
  const ScaleC c = parse_c(o);
  std::optional<PisotCertificate> cert;
  if (!o.pisot_poly.empty())
    cert = certify_pisot(c.value, parse_poly(o.pisot_poly));
  else
    cert = builtin_pisot_certificate(c);
  if (!cert)
    throw Error(Errc::NotPisot,
                "no certificate: supply --pisot-poly or use a catalog value");
  json j;
  j["meta"] = meta_json(o, nullptr);
  j["c"] = c.value;
  j["coefficients"] = cert->coefficients;
  json roots = json::array();
  for (std::size_t i = 0; i < cert->roots.size(); ++i)
    roots.push_back({{"re", cert->roots[i].real()},
                     {"im", cert->roots[i].imag()},
                     {"radius", cert->root_radii[i]},
                     {"principal", i == cert->principal_index}});
  j["roots"] = roots;
  j["conjugate_bound"] = cert->conjugate_bound;
  j["margin"] = cert->margin;
  j["power_sums_integer_check"] = power_sums_near_integers(*cert, 30);
  emit(o, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stationary laws of Poisson-driven generalised "
               "Ornstein-Uhlenbeck processes"};
  app.require_subcommand(1);

  Options o;
  double zmin = -50, zmax = 50;
  std::uint64_t steps = 1001, horizon = 64, depth = 0;
  std::uint64_t nmax_levy = 32, mmax_levy = 64;
  std::string validate;
  double tv_threshold = 0.005, ks_alpha = 1e-3;

  auto add_common = [&](CLI::App* sub, bool with_rates = true) {
    sub->add_option("--c", o.c_str, "scale constant (integral values exact)");
    sub->add_option("--c-num", o.c_num, "exact rational c: numerator");
    sub->add_option("--c-den", o.c_den, "exact rational c: denominator");
    sub->add_option("--p", o.p_str, "probability of a (1,0) jump");
    sub->add_option("--q", o.q_str, "probability of a (0,1) jump");
    sub->add_option("--r", o.r_str, "probability of a (1,1) jump");
    if (with_rates) {
      sub->add_option("--u", o.u_str, "rate of (1,0) jumps");
      sub->add_option("--v", o.v_str, "rate of (0,1) jumps");
      sub->add_option("--w", o.w_str, "rate of (1,1) jumps");
    }
    sub->add_option("--tol", o.tol, "evaluation tolerance");
    sub->add_option("--seed", o.seed, "rng seed (fallback: GOUQ_SEED)")
        ->each([&](const std::string&) { o.seed_given = true; });
    sub->add_option("--n", o.n, "sample/coefficient count")
        ->each([&](const std::string&) { o.n_given = true; });
    sub->add_option("--out", o.out, "output file (stdout otherwise)");
    sub->add_option("--format", o.format, "csv or json");
    sub->add_option("--pisot-poly", o.pisot_poly,
                    "monic integer polynomial, descending, e.g. \"1,-1,-1\"");
  };

  CLI::App* classify = app.add_subcommand("classify", "all verdicts as JSON");
  add_common(classify);
  classify->add_flag("--ps-assumption", o.ps_assumption,
                     "report consistency with the almost-every-c regime");

  CLI::App* cf = app.add_subcommand("cf", "characteristic function grid CSV");
  add_common(cf);
  cf->add_option("--zmin", zmin, "grid start");
  cf->add_option("--zmax", zmax, "grid end");
  cf->add_option("--steps", steps, "grid points");

  CLI::App* sample = app.add_subcommand("sample", "series samples as CSV");
  add_common(sample);
  sample->add_option("--depth", depth, "series truncation depth (0 = auto)");

  CLI::App* simulate =
      app.add_subcommand("simulate", "event-driven process simulation");
  add_common(simulate);
  simulate->add_option("--horizon", horizon, "N-jump horizon");
  simulate->add_option("--validate", validate,
                       "statistical validation: innovation | series");
  simulate->add_option("--tv-threshold", tv_threshold,
                       "innovation acceptance threshold");
  simulate->add_option("--ks-alpha", ks_alpha, "series acceptance level");

  CLI::App* katti_cmd =
      app.add_subcommand("katti", "canonical coefficients of the innovation law");
  add_common(katti_cmd);

  CLI::App* levy =
      app.add_subcommand("levy", "signed point measure of the stationary law");
  add_common(levy);
  levy->add_option("--nmax", nmax_levy, "number of scale levels");
  levy->add_option("--mmax", mmax_levy, "lattice points per level");

  CLI::App* entropy = app.add_subcommand("entropy", "innovation entropy");
  add_common(entropy);

  CLI::App* tevolution = app.add_subcommand(
      "tevolution", "singularity threshold of convolution powers");
  add_common(tevolution);

  CLI::App* pisot = app.add_subcommand("pisot", "certify a scale constant");
  add_common(pisot);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!o.format.empty() && o.format != "csv" && o.format != "json")
      throw Error(Errc::InvalidRate, "--format must be csv or json");
    if (classify->parsed()) return cmd_classify(o);
    if (cf->parsed()) return cmd_cf(o, zmin, zmax, steps);
    if (sample->parsed()) return cmd_sample(o, depth);
    if (simulate->parsed())
      return cmd_simulate(o, horizon, validate, tv_threshold, ks_alpha);
    if (katti_cmd->parsed()) return cmd_katti(o);
    if (levy->parsed()) return cmd_levy(o, nmax_levy, mmax_levy);
    if (entropy->parsed()) return cmd_entropy(o);
    if (tevolution->parsed()) return cmd_tevolution(o);
    if (pisot->parsed()) return cmd_pisot(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
