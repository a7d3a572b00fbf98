#include "conelcp/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "conelcp/classify.hpp"
#include "conelcp/lcp.hpp"
#include "conelcp/orbit.hpp"

namespace conelcp {

RunOptions resolve_options(const InstanceFile& inst, std::optional<double> tol,
                           std::optional<std::size_t> samples, std::optional<std::uint64_t> seed) {
  RunOptions o;
  o.tol = tol.value_or(inst.tol.value_or(o.tol));
  o.samples = samples.value_or(inst.samples.value_or(o.samples));
  o.seed = seed.value_or(inst.seed.value_or(o.seed));
  return o;
}

namespace {

Json options_json(const RunOptions& o) {
  Json j;
  j["tol"] = o.tol;
  j["samples"] = o.samples;
  j["seed"] = o.seed;
  return j;
}

Json certificate_json(const Certificate& c) {
  Json j;
  if (const auto* e = std::get_if<EigenCertificate>(&c)) {
    j["kind"] = "eigenpair";
    j["eigenvalue"] = e->eigenvalue;
    j["eigenvector"] = e->eigenvector;
    j["form_value"] = e->form_value;
  } else if (const auto* m = std::get_if<MinorCertificate>(&c)) {
    j["kind"] = "principal-minor";
    j["index_set"] = m->index_set;
    j["minor"] = m->minor;
    j["minors_checked"] = m->minors_checked;
  } else if (const auto* f = std::get_if<FeasibilityCertificate>(&c)) {
    j["kind"] = "dual-feasibility";
    j["lp_optimum"] = f->lp_optimum;
    j["y"] = f->y;
    j["q"] = f->q;
  } else if (const auto* q = std::get_if<QCertificate>(&c)) {
    j["kind"] = "q-route";
    j["route"] = to_string(q->route);
    if (!q->q.empty()) j["q"] = q->q;
    j["samples"] = q->samples;
  }
  return j;
}

Json verdict_json(const PropertyVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.verdict);
  j["certificate"] = certificate_json(v.certificate);
  return j;
}

Json solution_json(const LcpSolution& s) {
  Json j;
  j["x"] = s.x;
  j["w"] = s.w;
  j["residual_primal"] = s.residual_primal;
  j["residual_dual"] = s.residual_dual;
  j["complementarity"] = s.complementarity;
  return j;
}

Json header(const char* command, const InstanceFile& inst, const RunOptions& opt) {
  Json j;
  j["command"] = command;
  j["options"] = options_json(opt);
  j["m"] = inst.matrix.dim();
  return j;
}

// Verdict or the reason it was not computed.
template <typename F>
Json guarded_verdict(F&& f) {
  try {
    return verdict_json(f());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DimensionTooLarge) throw;
    Json j;
    j["skipped"] = to_string(e.code());
    return j;
  }
}

}  // namespace

CommandResult cmd_classify(const InstanceFile& inst, const RunOptions& opt) {
  const Matrix& a = inst.matrix;
  CommandResult r;
  r.report = header("classify", inst, opt);
  Json& j = r.report;

  const Trichotomy cls = form_class(a, opt.tol);
  bool invertible = true;
  try {
    (void)inverse(a);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    invertible = false;
  }
  j["class"] = to_string(cls.kind);
  j["invertible"] = invertible;
  j["lambda_min"] = cls.lambda_min;
  j["lambda_max"] = cls.lambda_max;
  j["positive_definite"] = verdict_json(is_positive_definite(a, opt.tol));
  j["p_property"] = guarded_verdict([&] { return is_p_matrix(a, opt.tol); });
  const PropertyVerdict f = has_f_property(a, opt.tol);
  j["f_property"] = verdict_json(f);
  j["q_property"] = guarded_verdict([&] { return q_property_check(a, opt.samples, opt.seed, opt.tol); });

  std::ostringstream s;
  s << "class " << to_string(cls.kind) << (invertible ? "" : " (singular)") << ", lambda in ["
    << cls.lambda_min << ", " << cls.lambda_max << "], P "
    << j["p_property"].value("verdict", "skipped") << ", F " << to_string(f.verdict) << ", Q "
    << j["q_property"].value("verdict", "skipped");
  r.summary = s.str();
  return r;
}

CommandResult cmd_solve(const InstanceFile& inst, const RunOptions& opt) {
  if (!inst.q) throw Error(ErrorCode::InvalidInput, "solve needs \"q\"");
  const std::size_t m = inst.matrix.dim();
  CommandResult r;
  r.report = header("solve", inst, opt);
  Json& j = r.report;

  const SimplicialCone cone = inst.cone ? SimplicialCone(*inst.cone) : SimplicialCone::orthant(m);
  j["cone"] = inst.cone ? cone_to_json(*inst.cone) : Json("orthant");
  const ConeSolveResult res = solve_on_cone_detailed(ConeLcp{cone, inst.matrix, *inst.q}, opt.tol);

  j["outcome"] = outcome_name(res.outcome);
  if (const auto* sol = std::get_if<LcpSolution>(&res.outcome)) {
    j["solution"] = solution_json(*sol);
    r.exit_code = kExitOk;
  } else {
    j["solution"] = nullptr;
    r.exit_code = kExitNegative;
  }
  Json reduced;
  reduced["matrix"] = matrix_to_json(res.reduced.m);
  reduced["q"] = vector_to_json(res.reduced.q);
  reduced["solution"] = res.reduced_solution ? Json(*res.reduced_solution) : Json(nullptr);
  reduced["used_enumeration"] = res.used_enumeration;
  j["reduced"] = reduced;

  r.summary = std::string("outcome ") + outcome_name(res.outcome);
  return r;
}

namespace {

Json non_f_witness_json(const CongruenceWitness& w, double tol) {
  const auto& cert = std::get<NonFCertificate>(w.certificate);
  Json j;
  j["factor"] = matrix_to_json(w.congruence.factor());
  j["member"] = matrix_to_json(w.member);
  j["row"] = cert.row;
  j["q"] = cert.q;
  j["f_property"] = verdict_json(has_f_property(w.member, tol));
  return j;
}

Json positive_witness_json(const CongruenceWitness& w) {
  const auto& cert = std::get<PositiveQCertificate>(w.certificate);
  Json j;
  j["factor"] = matrix_to_json(w.congruence.factor());
  j["member"] = matrix_to_json(w.member);
  j["min_entry"] = cert.min_entry;
  j["shears"] = cert.shears;
  j["permutations"] = cert.permutations;
  return j;
}

constexpr std::size_t kNonpositiveOrbitSamples = 10;
constexpr std::size_t kConeWitnessSamples = 100;

}  // namespace

CommandResult cmd_witness(const InstanceFile& inst, const RunOptions& opt) {
  const Matrix& a = inst.matrix;
  CommandResult r;
  r.report = header("witness", inst, opt);
  Json& j = r.report;

  const Trichotomy cls = trichotomy(a, opt.tol);
  j["class"] = to_string(cls.kind);
  j["lambda_min"] = cls.lambda_min;
  j["lambda_max"] = cls.lambda_max;

  switch (cls.kind) {
    case TrichotomyClass::PositiveDefinite: {
      const Matrix s = symmetrizant(a);
      const CongruenceWitness w = identity_orbit_witness(s, opt.tol);
      Json io;
      io["symmetrizant"] = matrix_to_json(s);
      io["factor"] = matrix_to_json(w.congruence.factor());
      io["member"] = matrix_to_json(w.member);
      io["residual"] = std::get<IdentityOrbitCertificate>(w.certificate).residual;
      io["member_of_matrix"] = matrix_to_json(apply(w.congruence, a));
      j["identity_orbit"] = io;
      j["statement"] =
          "every congruence-orbit member is a P-matrix; the matrix has the K-P, K-Q and K-F "
          "properties for every simplicial cone K";
      r.summary = "positive definite: identity-orbit congruence emitted";
      break;
    }
    case TrichotomyClass::Indefinite: {
      const ConeWitnesses cw = cone_witnesses(a, opt.tol, kConeWitnessSamples, opt.seed);
      j["non_f_witness"] = non_f_witness_json(cw.orbit.non_f, opt.tol);
      j["positive_q_witness"] = positive_witness_json(cw.orbit.positive_q);
      Json nk;
      nk["cone"] = cone_to_json(cw.non_f_cone.generators());
      nk["q"] = cw.infeasible_q;
      nk["verified"] = check_cone_non_f(a, cw.non_f_cone, cw.infeasible_q, opt.tol);
      j["non_f_cone"] = nk;
      Json qk;
      qk["cone"] = cone_to_json(cw.q_cone.generators());
      qk["samples"] = cw.samples;
      qk["solved"] = cw.solved_samples;
      j["q_cone"] = qk;
      j["statement"] =
          "the congruence orbit contains non-F members and positive (hence Q) members";
      r.summary = "indefinite: non-F and positive Q witnesses emitted, q-cone solved " +
                  std::to_string(cw.solved_samples) + "/" + std::to_string(cw.samples);
      break;
    }
    case TrichotomyClass::NonpositiveForm: {
      std::mt19937_64 rng(opt.seed);
      Json samples = Json::array();
      std::size_t failing = 0;
      for (std::size_t s = 0; s < kNonpositiveOrbitSamples; ++s) {
        const Congruence l = random_congruence(a.dim(), rng);
        const Matrix member = apply(l, a);
        const PropertyVerdict f = has_f_property(member, opt.tol);
        if (f.certified_false()) ++failing;
        Json e;
        e["factor"] = matrix_to_json(l.factor());
        e["member"] = matrix_to_json(member);
        e["f_property"] = verdict_json(f);
        samples.push_back(e);
      }
      j["orbit_samples"] = samples;
      j["non_f_samples"] = failing;
      j["statement"] =
          "no congruence-orbit member has the F-property; the matrix has the K-F property for "
          "no simplicial cone K";
      r.summary = "nonpositive form: " + std::to_string(failing) + "/" +
                  std::to_string(kNonpositiveOrbitSamples) + " sampled members certified non-F";
      break;
    }
  }
  return r;
}

CommandResult cmd_oracle(const InstanceFile& inst, const RunOptions& opt) {
  if (!inst.q) throw Error(ErrorCode::InvalidInput, "oracle needs \"q\"");
  CommandResult r;
  r.report = header("oracle", inst, opt);
  Json& j = r.report;
  const auto sols = enumerate_solutions(ClassicalLcp{inst.matrix, *inst.q}, opt.tol);
  j["outcome"] = sols.empty() ? "NoSolutionCertified" : "Solutions";
  j["count"] = sols.size();
  Json list = Json::array();
  for (const auto& s : sols) list.push_back(solution_json(s));
  j["solutions"] = list;
  r.exit_code = sols.empty() ? kExitNegative : kExitOk;
  r.summary = std::to_string(sols.size()) + " complementary solution(s)";
  return r;
}

bool parse_gen_kind(const std::string& name, GenKind& kind) {
  if (name == "pd") kind = GenKind::Pd;
  else if (name == "indefinite") kind = GenKind::Indefinite;
  else if (name == "skew") kind = GenKind::Skew;
  else if (name == "pmatrix") kind = GenKind::PMatrix;
  else if (name == "positive") kind = GenKind::Positive;
  else return false;
  return true;
}

namespace {

Matrix normal_matrix(std::size_t m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) g(i, k) = normal(rng);
  return g;
}

Matrix gen_pd(std::size_t m, std::mt19937_64& rng) {
  const Matrix g = normal_matrix(m, rng);
  return g.transpose() * g + 0.1 * Matrix::identity(m);
}

}  // namespace

InstanceFile cmd_gen(GenKind kind, std::size_t dim, std::uint64_t seed) {
  if (dim < 1 || dim > kMaxGenDim)
    throw Error(ErrorCode::InvalidInput, "dim must lie in 1..12");
  if (kind == GenKind::Indefinite && dim < 2)
    throw Error(ErrorCode::InvalidInput, "indefinite matrices need dim >= 2");

  std::mt19937_64 rng(seed);
  Matrix a;
  switch (kind) {
    case GenKind::Pd:
      a = gen_pd(dim, rng);
      break;
    case GenKind::Skew: {
      const Matrix g = normal_matrix(dim, rng);
      a = 0.5 * (g - g.transpose());
      break;
    }
    case GenKind::Indefinite:
      while (true) {
        a = normal_matrix(dim, rng);
        try {
          if (trichotomy(a).kind == TrichotomyClass::Indefinite) break;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::SingularMatrix) throw;
        }
      }
      break;
    case GenKind::PMatrix: {
      a = gen_pd(dim, rng);
      const double scale = 0.5 * a.max_abs();
      for (int attempt = 0; attempt < 50; ++attempt) {
        const Matrix candidate = a + scale * normal_matrix(dim, rng);
        if (is_p_matrix(candidate).certified_true()) {
          a = candidate;
          break;
        }
      }
      break;
    }
    case GenKind::Positive: {
      a = normal_matrix(dim, rng);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) a(i, k) = std::abs(a(i, k)) + 0.1;
      break;
    }
  }
  std::normal_distribution<double> normal;
  Vector q(dim);
  for (double& v : q) v = normal(rng);
  return InstanceFile{a, q, {}, seed, {}, {}};
}

Json mask_wall_time(Json report) {
  report.erase("wall_time_ms");
  return report;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear complementarity on simplicial cones and congruence-orbit witnesses",
               "conelcp"};
  app.require_subcommand(1);

  double tol = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool verbose = false;
  auto* tol_opt = app.add_option("--tol", tol, "numerical tolerance (default 1e-9)")
                      ->check(CLI::PositiveNumber);
  auto* samples_opt = app.add_option("--samples", samples, "random samples (default 200)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (default 0)");
  app.add_flag("--verbose", verbose, "human-readable summary on stderr");

  std::string path;
  auto add_file_command = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", path, "instance file (JSON or CSV)")->required();
    sub->fallthrough();
    return sub;
  };
  auto* classify = add_file_command("classify", "trichotomy and P/F/Q verdicts");
  auto* solve = add_file_command("solve", "solve the LCP on the instance cone");
  auto* witness = add_file_command("witness", "congruence-orbit witnesses");
  auto* oracle = add_file_command("oracle", "exhaustive complementary-basis enumeration");

  auto* gen = app.add_subcommand("gen", "print a random instance");
  std::string kind_name;
  std::size_t dim = 0;
  gen->add_option("--kind", kind_name, "pd | indefinite | skew | pmatrix | positive")->required();
  gen->add_option("--dim", dim, "dimension 1..12")->required();
  gen->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  auto opt_or = [](auto* o, auto v) {
    return o->count() > 0 ? std::optional<decltype(v)>(v) : std::nullopt;
  };
  const auto started = std::chrono::steady_clock::now();
  try {
    if (gen->parsed()) {
      GenKind kind;
      if (!parse_gen_kind(kind_name, kind))
        throw Error(ErrorCode::InvalidInput, "unknown kind '" + kind_name + "'");
      out << instance_to_json(cmd_gen(kind, dim, seed)).dump(2) << "\n";
      return kExitOk;
    }

    const std::string bytes = read_file(path);
    const InstanceFile inst = parse_instance(bytes);
    const RunOptions opt =
        resolve_options(inst, opt_or(tol_opt, tol), opt_or(samples_opt, samples),
                        opt_or(seed_opt, seed));

    CommandResult result;
    if (classify->parsed()) result = cmd_classify(inst, opt);
    else if (solve->parsed()) result = cmd_solve(inst, opt);
    else if (witness->parsed()) result = cmd_witness(inst, opt);
    else if (oracle->parsed()) result = cmd_oracle(inst, opt);

    Json report;
    for (auto& [key, value] : result.report.items()) {
      report[key] = value;
      if (key == "command") report["input_digest"] = input_digest(bytes);
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started).count();
    report["wall_time_ms"] = std::round(ms * 1000.0) / 1000.0;
    out << report.dump(2) << "\n";
    if (verbose) err << result.summary << "\n";
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::InvalidInput:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::DimensionTooLarge:
      case ErrorCode::SingularMatrix:
        return kExitInput;
      default:
        return kExitNumerical;
    }
  }
}

}  // namespace conelcp
