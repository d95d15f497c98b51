// Copyright 2026 The qpkkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "instance_io.hpp"
#include "qpkkt/rng.hpp"
#include "qpkkt/solvers.hpp"

namespace qpkkt::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct GlobalOptions {
  std::string eps;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool exact = false;
  bool use_float = false;
  bool trace = false;
};

struct Outcome {
  int exit_code = kExitOk;
  Json report = Json::object();
  // When set, printed instead of the report (gen without --out).
  std::optional<std::string> raw_output;
};

[[noreturn]] void InputError(const std::string& what) {
  throw Error(ErrorKind::kParse, what);
}

Rational EpsOrDefault(const GlobalOptions& g, const char* fallback) {
  if (g.eps.empty()) {
    if (fallback == nullptr) InputError("this command needs --eps");
    return ParseRational(fallback);
  }
  Rational eps = ParseRational(g.eps);
  if (sgn(eps) < 0) InputError("--eps must be nonnegative");
  return eps;
}

Rational PositiveEps(const GlobalOptions& g) {
  Rational eps = EpsOrDefault(g, nullptr);
  if (sgn(eps) <= 0) InputError("--eps must be positive for this command");
  return eps;
}

Json Str(const Rational& q) { return FormatRational(q); }

Json Str(const Vec<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(FormatRational(q));
  return out;
}

Json Num(const Vec<double>& v) {
  Json out = Json::array();
  for (double d : v) out.push_back(d);
  return out;
}

Json Value(const Rational& q) { return Str(q); }
Json Value(double d) { return d; }
Json Value(const Vec<Rational>& v) { return Str(v); }
Json Value(const Vec<double>& v) { return Num(v); }

template <Scalar T>
Json KktJson(const KKTReport<T>& r) {
  Json j;
  j["verdict"] = r.verdict;
  j["tolerance"] = Value(r.tolerance);
  j["gradient"] = Value(r.gradient);
  j["residuals"] = Value(r.residuals);
  const std::size_t worst = r.WorstIndex();
  j["worst_residual"] = Value(r.WorstResidual());
  if (worst < r.residuals.size()) j["worst_coordinate"] = worst;
  if (r.dual_interval) {
    j["dual_interval"] = Json::array(
        {Value(r.dual_interval->first), Value(r.dual_interval->second)});
  }
  if (r.dual_value) j["dual_value"] = Value(*r.dual_value);
  return j;
}

Json AuditJson(const AuditRecord& audit) {
  Json j;
  j["passed"] = audit.passed();
  Json checks = Json::array();
  for (const auto& c : audit.checks) {
    Json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

Json SolveJson(const SolveResult& r, bool trace) {
  Json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["attempts"] = r.attempts;
  j["point"] = Str(r.exact_point);
  j["kkt"] = KktJson(r.report);
  if (trace) {
    Json t = Json::array();
    for (const auto& e : r.trace) {
      t.push_back(Json::array(
          {e.attempt, e.iteration, e.objective, e.worst_residual, e.gap}));
    }
    j["trace_columns"] =
        Json::array({"attempt", "iteration", "objective", "worst_residual",
                     "gap"});
    j["trace"] = std::move(t);
  }
  return j;
}

struct LoadedInstance {
  InstanceFile file;
  std::string digest;
};

LoadedInstance LoadInstance(const std::string& path) {
  const std::string text = ReadTextFile(path);
  return LoadedInstance{ParseInstance(text), Sha256Hex(text)};
}

PointFile LoadPoint(const std::string& path) {
  return ParsePoint(ReadTextFile(path));
}

Json Parameters(const GlobalOptions& g, const std::optional<Rational>& eps) {
  Json p;
  if (eps) p["eps"] = Str(*eps);
  p["seed"] = std::to_string(g.seed);
  p["carrier"] = g.use_float ? "float" : "exact";
  return p;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  std::string kind;
  std::size_t n = 0;
  std::size_t m = 0;
  bool symmetric = false;
  bool common_payoff = false;
  bool imitation = false;
  std::string scale;
  std::string out;
};

Matrix<Rational> RandomGrid(Rng& rng, std::size_t rows, std::size_t cols,
                            std::int64_t lo, std::int64_t hi, bool symmetric) {
  Matrix<Rational> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = symmetric ? i : 0; j < cols; ++j) {
      m(i, j) = rng.UniformRational(lo, hi, 100);
      if (symmetric) m(j, i) = m(i, j);
    }
  }
  return m;
}

Outcome CmdGen(const GenOptions& o, const GlobalOptions& g) {
  if (o.n < 1) InputError("--n must be at least 1");
  const InstanceKind kind = ParseKind(o.kind);
  Rng rng(g.seed);
  std::map<std::string, std::string> meta{{"generator", "qpkkt gen"},
                                          {"seed", std::to_string(g.seed)}};
  InstanceFile file;
  if (kind == InstanceKind::kBimatrixGame) {
    const std::size_t m = o.m == 0 ? o.n : o.m;
    if ((o.symmetric || o.imitation) && m != o.n) {
      InputError("symmetric and imitation games need m = n");
    }
    if (o.imitation && o.common_payoff) {
      InputError("--imitation and --common-payoff are exclusive");
    }
    // With B = A^T the payoff A is free; otherwise symmetry means A = A^T.
    const bool symmetric_a =
        o.symmetric && (o.common_payoff || o.imitation);
    Matrix<Rational> a = RandomGrid(rng, o.n, m, 0, 1, symmetric_a);
    Matrix<Rational> b;
    std::string klass = "general";
    if (o.imitation) {
      b = Matrix<Rational>::Identity(o.n);
      klass = o.symmetric ? "imitation_symmetric_payoffs" : "imitation";
    } else if (o.common_payoff) {
      b = a;
      klass = o.symmetric ? "symmetric_common_payoff" : "common_payoff";
    } else if (o.symmetric) {
      b = a.Transposed();
      klass = "symmetric";
    } else {
      b = RandomGrid(rng, o.n, m, 0, 1, false);
    }
    meta["class"] = klass;
    file = FromGame(BimatrixGame<Rational>(std::move(a), std::move(b)), meta);
  } else {
    Matrix<Rational> a = RandomGrid(rng, o.n, o.n, -2, 2, true);
    Vec<Rational> b(o.n);
    for (auto& e : b) e = rng.UniformRational(-2, 2, 100);
    if (kind == InstanceKind::kBoxQp) {
      file = FromBoxQp(BoxQP<Rational>(SymMatrix<Rational>(std::move(a)), b),
                       meta);
    } else {
      Rational scale = o.scale.empty() ? Rational(static_cast<long>(
                                             1 + rng.UniformInt(4)))
                                       : ParseRational(o.scale);
      file = FromSimplexQp(
          SimplexQP<Rational>(SymMatrix<Rational>(std::move(a)), b, scale),
          meta);
    }
  }
  const std::string text = SerializeInstance(file);
  Outcome outcome;
  if (o.out.empty()) {
    outcome.raw_output = text;
    return outcome;
  }
  WriteTextFile(o.out, text);
  outcome.report["instance_digest"] = Sha256Hex(text);
  outcome.report["parameters"] = Parameters(g, std::nullopt);
  outcome.report["kind"] = KindName(kind);
  outcome.report["n"] = file.n;
  outcome.report["out"] = o.out;
  return outcome;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string instance;
  std::string point;
};

Outcome CmdVerify(const VerifyOptions& o, const GlobalOptions& g) {
  const auto [file, digest] = LoadInstance(o.instance);
  const PointFile point = LoadPoint(o.point);
  const Rational eps = EpsOrDefault(g, "0");
  Outcome outcome;
  outcome.report["instance_digest"] = digest;
  outcome.report["parameters"] = Parameters(g, eps);
  outcome.report["kind"] = KindName(file.kind);
  bool verdict = false;
  switch (file.kind) {
    case InstanceKind::kBoxQp: {
      const auto qp = ToBoxQp(file);
      if (g.use_float) {
        const BoxQP<double> fqp(ToDouble(qp.quadratic()),
                                ToDouble(qp.linear()));
        const auto r =
            VerifyBoxKkt<double>(fqp, ToDouble(point.point), eps.get_d());
        verdict = r.verdict;
        outcome.report["kkt"] = KktJson(r);
      } else {
        const auto r = VerifyBoxKkt<Rational>(qp, point.point, eps);
        verdict = r.verdict;
        outcome.report["kkt"] = KktJson(r);
      }
      break;
    }
    case InstanceKind::kSimplexQp: {
      const auto qp = ToSimplexQp(file);
      if (g.use_float) {
        const SimplexQP<double> fqp(ToDouble(qp.quadratic()),
                                    ToDouble(qp.linear()), qp.scale().get_d());
        const auto r =
            VerifySimplexKkt<double>(fqp, ToDouble(point.point), eps.get_d());
        verdict = r.verdict;
        outcome.report["kkt"] = KktJson(r);
      } else {
        const auto r = VerifySimplexKkt<Rational>(qp, point.point, eps);
        verdict = r.verdict;
        outcome.report["kkt"] = KktJson(r);
      }
      break;
    }
    case InstanceKind::kBimatrixGame: {
      const auto game = ToGame(file);
      const auto profile = ToProfile(point);
      Json eq;
      if (g.use_float) {
        const BimatrixGame<double> fg(ToDouble(game.row_payoffs()),
                                      ToDouble(game.col_payoffs()));
        const MixedProfile<double> fp{ToDouble(profile.x), ToDouble(profile.y)};
        const auto gaps = ComputeGaps(fg, fp);
        verdict = VerifyWsne(fg, fp, eps.get_d());
        eq["nash"] = VerifyNash(fg, fp, eps.get_d());
        eq["row_support_lag"] = gaps.row_support_lag;
        eq["col_support_lag"] = gaps.col_support_lag;
        eq["row_regret"] = gaps.row_regret;
        eq["col_regret"] = gaps.col_regret;
      } else {
        const auto gaps = ComputeGaps(game, profile);
        verdict = VerifyWsne(game, profile, eps);
        eq["nash"] = VerifyNash(game, profile, eps);
        eq["row_support_lag"] = Str(gaps.row_support_lag);
        eq["col_support_lag"] = Str(gaps.col_support_lag);
        eq["row_regret"] = Str(gaps.row_regret);
        eq["col_regret"] = Str(gaps.col_regret);
      }
      eq["well_supported"] = verdict;
      outcome.report["equilibrium"] = std::move(eq);
      break;
    }
  }
  outcome.report["verdict"] = verdict;
  outcome.exit_code = verdict ? kExitOk : kExitFailed;
  return outcome;
}

// ---------------------------------------------------------------- reduce

struct ReduceOptions {
  std::string instance;
  std::string out;
  std::string cert;
  bool symmetrize = false;
  bool homogenize = false;
};

std::string DefaultCertificatePath(const std::string& out) {
  fs::path p(out);
  std::string stem = p.stem().string();
  return (p.parent_path() / (stem + ".cert.json")).string();
}

Outcome CmdReduce(const ReduceOptions& o, const GlobalOptions& g) {
  auto [file, digest] = LoadInstance(o.instance);
  if (o.symmetrize && file.kind != InstanceKind::kBimatrixGame) {
    file.a = Symmetrize(file.a).matrix();
  }
  Outcome outcome;
  outcome.report["instance_digest"] = digest;
  if (file.kind == InstanceKind::kBoxQp) {
    const Rational eps = PositiveEps(g);
    const BoxReduction red = BoxToSimplex(ToBoxQp(file), eps);
    const auto& c = red.certificate;
    const std::string out_text = SerializeInstance(FromSimplexQp(
        red.qp, {{"source_digest", digest}, {"reduction", "box_to_simplex"}}));
    const std::string cert_text = SerializeCertificate(c);
    const std::string cert_path =
        o.cert.empty() ? DefaultCertificatePath(o.out) : o.cert;
    WriteTextFile(o.out, out_text);
    WriteTextFile(cert_path, cert_text);
    Json p = Parameters(g, eps);
    p["delta"] = Str(c.delta);
    p["M"] = Str(c.big_m);
    outcome.report["parameters"] = std::move(p);
    outcome.report["n"] = c.n;
    outcome.report["constructed_n"] = c.index_map.size();
    outcome.report["scale"] = Str(c.scale);
    outcome.report["out"] = o.out;
    outcome.report["out_digest"] = Sha256Hex(out_text);
    outcome.report["certificate"] = cert_path;
    outcome.report["certificate_digest"] = Sha256Hex(cert_text);
  } else if (file.kind == InstanceKind::kSimplexQp) {
    const auto qp = ToSimplexQp(file);
    auto norm = NormalizeScale(qp);
    SimplexQP<Rational> result = norm.canonical;
    if (o.homogenize) result = Homogenize(result);
    auto meta = file.metadata;
    meta["source_digest"] = digest;
    meta["reduction"] = o.homogenize ? "normalize_scale+homogenize"
                                     : "normalize_scale";
    const std::string out_text = SerializeInstance(FromSimplexQp(result, meta));
    WriteTextFile(o.out, out_text);
    outcome.report["parameters"] = Parameters(g, std::nullopt);
    outcome.report["source_scale"] = Str(norm.scale);
    outcome.report["tolerance_factor"] = Str(norm.scale);
    outcome.report["out"] = o.out;
    outcome.report["out_digest"] = Sha256Hex(out_text);
  } else {
    InputError("reduce accepts box_qp or simplex_qp instances");
  }
  return outcome;
}

// ---------------------------------------------------------------- solve

struct SolverFlags {
  std::string solver = "pgd";
  std::string step = "fixed";
  std::string fw_rule = "exact";
  bool fw_away = false;
  std::size_t max_iters = 1'000'000;
  std::size_t check_every = 100;
  std::size_t restarts = 10;
  double lipschitz = 0.0;
  std::string start;
};

SolverParams MakeParams(const SolverFlags& f, const GlobalOptions& g,
                        const Rational& eps) {
  SolverParams p;
  if (f.step == "fixed") {
    p.step_rule = StepRule::kFixed;
  } else if (f.step == "backtracking") {
    p.step_rule = StepRule::kBacktracking;
  } else {
    InputError("--step must be fixed or backtracking");
  }
  if (f.fw_rule == "exact") {
    p.frank_wolfe_rule = FrankWolfeRule::kExactLineSearch;
  } else if (f.fw_rule == "open-loop") {
    p.frank_wolfe_rule = FrankWolfeRule::kOpenLoop;
  } else {
    InputError("--fw-rule must be exact or open-loop");
  }
  p.frank_wolfe_away_steps = f.fw_away;
  if (f.lipschitz > 0.0) p.lipschitz = f.lipschitz;
  p.max_iters = f.max_iters;
  p.check_every = f.check_every;
  p.restarts = f.restarts;
  p.eps = eps;
  p.rng_seed = g.seed;
  p.record_trace = g.trace;
  if (!f.start.empty()) p.start = ToDouble(LoadPoint(f.start).point);
  p.Validate();
  return p;
}

Json SolverJson(const SolverFlags& f) {
  Json j;
  j["solver"] = f.solver;
  j["step"] = f.step;
  if (f.solver == "fw") {
    j["fw_rule"] = f.fw_rule;
    j["fw_away_steps"] = f.fw_away;
  }
  j["max_iters"] = f.max_iters;
  j["check_every"] = f.check_every;
  j["restarts"] = f.restarts;
  if (f.lipschitz > 0.0) j["lipschitz"] = f.lipschitz;
  if (!f.start.empty()) j["start"] = f.start;
  return j;
}

Outcome SolveOne(const std::string& instance, const std::string& out,
                 const SolverFlags& f, const GlobalOptions& g) {
  const auto [file, digest] = LoadInstance(instance);
  const Rational eps = PositiveEps(g);
  const SolverParams params = MakeParams(f, g, eps);
  SolveResult result;
  if (file.kind == InstanceKind::kBoxQp) {
    if (f.solver != "pgd") InputError("box instances support --solver pgd");
    result = PgdBox(ToBoxQp(file), params);
  } else if (file.kind == InstanceKind::kSimplexQp) {
    const auto qp = ToSimplexQp(file);
    if (f.solver == "pgd") {
      result = PgdSimplex(qp, params);
    } else if (f.solver == "fw") {
      result = FrankWolfe(qp, params);
    } else {
      InputError("--solver must be pgd or fw");
    }
  } else {
    InputError("solve accepts box_qp or simplex_qp instances");
  }
  Outcome outcome;
  outcome.report["instance_digest"] = digest;
  Json p = Parameters(g, eps);
  p["solver"] = SolverJson(f);
  outcome.report["parameters"] = std::move(p);
  outcome.report["result"] = SolveJson(result, g.trace);
  if (!out.empty()) {
    PointFile pf{result.exact_point, std::nullopt, result.report.dual_value};
    const std::string text = SerializePoint(pf);
    WriteTextFile(out, text);
    outcome.report["out"] = out;
    outcome.report["out_digest"] = Sha256Hex(text);
  }
  outcome.exit_code = result.converged ? kExitOk : kExitFailed;
  return outcome;
}

// Runs `fn` on every *.json file of `dir` (sorted), `jobs` at a time. Each
// worker writes only its own slot.
Outcome RunBatch(const fs::path& dir, unsigned jobs,
                 const std::function<Outcome(const fs::path&)>& fn) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Outcome> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        results[i] = fn(files[i]);
      } catch (const Error& e) {
        results[i].exit_code = kExitInputError;
        results[i].report["error"] = e.what();
      } catch (const std::exception& e) {
        results[i].exit_code = kExitFailed;
        results[i].report["error"] = e.what();
      }
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(
                                                std::max<std::size_t>(
                                                    files.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Outcome combined;
  combined.report["batch"] = dir.string();
  combined.report["jobs"] = jobs;
  Json list = Json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    combined.exit_code = std::max(combined.exit_code, results[i].exit_code);
    Json e;
    e["file"] = files[i].filename().string();
    e["exit_code"] = results[i].exit_code;
    e["report"] = std::move(results[i].report);
    list.push_back(std::move(e));
  }
  combined.report["results"] = std::move(list);
  return combined;
}

struct SolveOptions {
  std::string instance;
  std::string out;
  SolverFlags flags;
};

Outcome CmdSolve(const SolveOptions& o, const GlobalOptions& g) {
  if (fs::is_directory(o.instance)) {
    if (!o.out.empty()) fs::create_directories(o.out);
    return RunBatch(o.instance, g.jobs, [&](const fs::path& p) {
      const std::string out =
          o.out.empty() ? "" : (fs::path(o.out) / p.filename()).string();
      return SolveOne(p.string(), out, o.flags, g);
    });
  }
  return SolveOne(o.instance, o.out, o.flags, g);
}

// ---------------------------------------------------------------- pipeline

struct PipelineOptions {
  std::string instance;
  std::string certificate;
  std::string out_dir;
  std::string start = "lift";
  SolverFlags flags;
};

Outcome PipelineOne(const std::string& instance, const std::string& out_dir,
                    const PipelineOptions& o, const GlobalOptions& g) {
  const auto [file, digest] = LoadInstance(instance);
  const Rational eps = PositiveEps(g);
  const BoxQP<Rational> box = ToBoxQp(file);
  if (o.start != "lift" && o.start != "barycenter") {
    InputError("--start must be lift or barycenter");
  }

  Outcome outcome;
  outcome.report["instance_digest"] = digest;
  Json stages = Json::object();
  auto fail = [&](const char* stage) {
    outcome.exit_code = kExitFailed;
    outcome.report["failed_stage"] = stage;
  };

  // Stage: reduce (or adopt a supplied certificate as-is).
  std::optional<ReductionCertificate> cert;
  std::vector<std::string> cert_problems;
  if (o.certificate.empty()) {
    cert = BoxToSimplex(box, eps).certificate;
  } else {
    cert = ParseCertificate(ReadTextFile(o.certificate));
    if (cert->source != box) {
      cert_problems.push_back("certificate source differs from the instance");
    }
  }
  for (auto& p : CertificateProblems(*cert)) cert_problems.push_back(p);
  const SimplexQP<Rational> constructed = BuildPenalizedQp(*cert);
  {
    Json s;
    s["M"] = Str(cert->big_m);
    s["delta"] = Str(cert->delta);
    s["scale"] = Str(cert->scale);
    s["constructed_n"] = cert->index_map.size();
    s["certificate_problems"] = cert_problems;
    stages["reduce"] = std::move(s);
  }
  Json p = Parameters(g, eps);
  p["delta"] = Str(cert->delta);
  p["M"] = Str(cert->big_m);
  p["start"] = o.start;
  p["solver"] = SolverJson(o.flags);
  outcome.report["parameters"] = std::move(p);

  // Stage: solve the constructed program to delta-KKT.
  SolverFlags flags = o.flags;
  flags.start.clear();
  SolverParams params = MakeParams(flags, g, cert->delta);
  std::size_t warm_iterations = 0;
  if (o.start == "lift") {
    SolverParams warm = params;
    warm.record_trace = false;
    const SolveResult seed = PgdBox(box, warm);
    warm_iterations = seed.iterations;
    params.start = ToDouble(LiftBoxPoint(*cert, seed.exact_point));
  }
  const SolveResult solved = PgdSimplex(constructed, params);
  {
    Json s = SolveJson(solved, g.trace);
    s["warm_start_iterations"] = warm_iterations;
    stages["solve"] = std::move(s);
  }
  if (!solved.converged) {
    fail("solve");
  } else {
    // Stage: audit the soundness invariants at the solver's point.
    const AuditRecord audit =
        AuditTheoremInvariants(*cert, solved.exact_point, solved.report);
    Json a = AuditJson(audit);
    stages["audit"] = a;
    if (!audit.passed() || !cert_problems.empty()) {
      fail("audit");
    } else {
      // Stages: pull back, then verify on the source at eps.
      const Vec<Rational> back = PullBack(*cert, solved.exact_point);
      stages["pull_back"] = Json{{"point", Str(back)}};
      const auto verdict = VerifyBoxKkt<Rational>(box, back, eps);
      stages["verify"] = KktJson(verdict);
      outcome.report["point"] = Str(back);
      if (!verdict.verdict) fail("verify");
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        const fs::path dir(out_dir);
        WriteTextFile(dir / "constructed.json",
                      SerializeInstance(FromSimplexQp(
                          constructed, {{"source_digest", digest}})));
        WriteTextFile(dir / "certificate.json", SerializeCertificate(*cert));
        WriteTextFile(dir / "constructed_point.json",
                      SerializePoint(PointFile{solved.exact_point, std::nullopt,
                                               solved.report.dual_value}));
        WriteTextFile(dir / "point.json",
                      SerializePoint(PointFile{back, std::nullopt,
                                               std::nullopt}));
        outcome.report["out_dir"] = out_dir;
      }
    }
  }
  outcome.report["stages"] = std::move(stages);
  outcome.report["verdict"] = outcome.exit_code == kExitOk;
  return outcome;
}

Outcome CmdPipeline(const PipelineOptions& o, const GlobalOptions& g) {
  if (fs::is_directory(o.instance)) {
    return RunBatch(o.instance, g.jobs, [&](const fs::path& p) {
      const std::string out =
          o.out_dir.empty() ? "" : (fs::path(o.out_dir) / p.stem()).string();
      return PipelineOne(p.string(), out, o, g);
    });
  }
  return PipelineOne(o.instance, o.out_dir, o, g);
}

// ---------------------------------------------------------------- audit

struct AuditOptions {
  std::string certificate;
  std::string point;
};

Outcome CmdAudit(const AuditOptions& o, const GlobalOptions& g) {
  const std::string text = ReadTextFile(o.certificate);
  const ReductionCertificate cert = ParseCertificate(text);
  const PointFile point = LoadPoint(o.point);
  const SimplexQP<Rational> constructed = BuildPenalizedQp(cert);
  const auto report =
      VerifySimplexKkt<Rational>(constructed, point.point, cert.delta);
  const AuditRecord audit = AuditTheoremInvariants(cert, point.point, report);
  Outcome outcome;
  outcome.report["certificate_digest"] = Sha256Hex(text);
  Json p = Parameters(g, cert.eps);
  p["delta"] = Str(cert.delta);
  p["M"] = Str(cert.big_m);
  outcome.report["parameters"] = std::move(p);
  outcome.report["kkt"] = KktJson(report);
  outcome.report["audit"] = AuditJson(audit);
  const bool ok = report.verdict && audit.passed();
  if (ok) outcome.report["pulled_back"] = Str(PullBack(cert, point.point));
  outcome.report["verdict"] = ok;
  outcome.exit_code = ok ? kExitOk : kExitFailed;
  return outcome;
}

// ---------------------------------------------------------------- bridge

struct BridgeOptions {
  std::string direction;
  std::string instance;
  std::string point;
  std::string out;
};

Outcome CmdBridge(const BridgeOptions& o, const GlobalOptions& g) {
  const auto [file, digest] = LoadInstance(o.instance);
  const Rational eps = EpsOrDefault(g, "0");
  std::optional<PointFile> point;
  if (!o.point.empty()) point = LoadPoint(o.point);

  Outcome outcome;
  outcome.report["instance_digest"] = digest;
  outcome.report["parameters"] = Parameters(g, eps);
  outcome.report["direction"] = o.direction;
  auto write = [&](const std::string& text) {
    if (o.out.empty()) return;
    WriteTextFile(o.out, text);
    outcome.report["out"] = o.out;
    outcome.report["out_digest"] = Sha256Hex(text);
  };
  bool ok = true;

  if (o.direction == "game-to-qp") {
    const auto game = ToGame(file);
    const GameClass klass = Classify(game);
    if (!klass.symmetric || !klass.common_payoff) {
      throw Error(ErrorKind::kHypothesisFailed,
                  "game-to-qp needs a symmetric common-payoff game (B = A = "
                  "A^T)");
    }
    const auto qp = GameToSimplexQp(game.row_payoffs());
    write(SerializeInstance(FromSimplexQp(qp, {{"source_digest", digest},
                                               {"bridge", o.direction}})));
    if (point) {
      const MixedProfile<Rational> sym{point->point, point->point};
      const bool wsne = VerifyWsne(game, sym, eps);
      const auto kkt = VerifySimplexKkt<Rational>(qp, point->point, eps);
      outcome.report["game_wsne"] = wsne;
      outcome.report["qp_kkt"] = KktJson(kkt);
      outcome.report["agree"] = wsne == kkt.verdict;
      ok = wsne && kkt.verdict;
    }
  } else if (o.direction == "qp-to-game") {
    const auto qp = ToSimplexQp(file);
    const auto embedding = SimplexQpToGame(qp);
    write(SerializeInstance(FromGame(embedding.game, {{"source_digest", digest},
                                                      {"bridge", o.direction}})));
    outcome.report["payoff_offset"] = Str(embedding.map.offset);
    outcome.report["payoff_scale"] = Str(embedding.map.scale);
    const Rational game_eps = embedding.GameTolerance(eps);
    outcome.report["game_eps"] = Str(game_eps);
    if (point) {
      const auto kkt = VerifySimplexKkt<Rational>(qp, point->point, eps);
      const bool wsne = VerifyWsne(
          embedding.game, MixedProfile<Rational>{point->point, point->point},
          game_eps);
      outcome.report["qp_kkt"] = KktJson(kkt);
      outcome.report["game_wsne"] = wsne;
      outcome.report["agree"] = wsne == kkt.verdict;
      ok = wsne && kkt.verdict;
    }
  } else if (o.direction == "imitation-forward") {
    if (!point) InputError("imitation-forward needs --point (y)");
    const auto game = ToGame(file);
    const auto profile =
        ImitationForward<Rational>(game.row_payoffs(), point->point, eps);
    write(SerializePoint(PointFile{profile.x, profile.y, std::nullopt}));
    outcome.report["x"] = Str(profile.x);
    outcome.report["y"] = Str(profile.y);
    outcome.report["imitation_wsne"] = true;
  } else if (o.direction == "imitation-backward") {
    if (!point) InputError("imitation-backward needs --point (x and y)");
    const auto game = ToGame(file);
    if (!Classify(game).imitation) {
      throw Error(ErrorKind::kHypothesisFailed,
                  "imitation-backward needs an imitation game (B = I)");
    }
    const auto y =
        ImitationBackward<Rational>(game.row_payoffs(), ToProfile(*point), eps);
    write(SerializePoint(PointFile{y, std::nullopt, std::nullopt}));
    outcome.report["y"] = Str(y);
    outcome.report["symmetric_wsne"] = true;
  } else {
    InputError("--direction must be game-to-qp, qp-to-game, "
               "imitation-forward or imitation-backward");
  }
  outcome.report["verdict"] = ok;
  outcome.exit_code = ok ? kExitOk : kExitFailed;
  return outcome;
}

void AddSolverFlags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--solver", f.solver, "pgd or fw (simplex only)");
  cmd->add_option("--step", f.step, "fixed or backtracking");
  cmd->add_option("--fw-rule", f.fw_rule, "exact or open-loop");
  cmd->add_flag("--fw-away", f.fw_away, "allow Frank-Wolfe away steps");
  cmd->add_option("--max-iters", f.max_iters, "iterations per attempt");
  cmd->add_option("--check-every", f.check_every, "verification period");
  cmd->add_option("--restarts", f.restarts, "random restarts");
  cmd->add_option("--lipschitz", f.lipschitz,
                  "step 1/L; default 1 + max absolute row sum");
}

std::string Echo(const std::vector<std::string>& args) {
  std::string s = "qpkkt";
  for (const auto& a : args) s += " " + a;
  return s;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Exact KKT and equilibrium verification for box and simplex "
               "QPs, the box-to-simplex reduction, and game bridges.",
               "qpkkt"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--eps", g.eps, "tolerance (decimal or p/q)");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--jobs", g.jobs, "parallel workers for directory inputs")
      ->check(CLI::PositiveNumber);
  auto* exact = app.add_flag("--exact", g.exact, "exact rational verification");
  auto* flt = app.add_flag("--float", g.use_float, "binary float verification");
  exact->excludes(flt);
  app.add_flag("--trace", g.trace, "include solver traces in reports");
  std::string report_path;
  app.add_option("--report", report_path, "write the report here");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a seeded instance");
  gen_cmd->add_option("--kind", gen.kind, "box_qp, simplex_qp, bimatrix_game")
      ->required();
  gen_cmd->add_option("--n", gen.n, "dimension (rows)")->required();
  gen_cmd->add_option("--m", gen.m, "columns of a game (default n)");
  gen_cmd->add_flag("--symmetric", gen.symmetric, "B = A^T (games)");
  gen_cmd->add_flag("--common-payoff", gen.common_payoff, "B = A (games)");
  gen_cmd->add_flag("--imitation", gen.imitation, "B = I (games)");
  gen_cmd->add_option("--scale", gen.scale, "simplex scale (default random)");
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "verify a point");
  verify_cmd->add_option("--instance", verify.instance, "instance file")
      ->required();
  verify_cmd->add_option("--point", verify.point, "point or profile file")
      ->required();

  ReduceOptions reduce;
  auto* reduce_cmd = app.add_subcommand(
      "reduce", "box QP to simplex QP, or normalize a simplex QP's scale");
  reduce_cmd->add_option("--instance", reduce.instance, "instance file")
      ->required();
  reduce_cmd->add_option("--out", reduce.out, "constructed instance")
      ->required();
  reduce_cmd->add_option("--cert", reduce.cert,
                         "certificate path (default <out>.cert.json)");
  reduce_cmd->add_flag("--symmetrize", reduce.symmetrize,
                       "replace A by (A + A^T)/2 before reducing");
  reduce_cmd->add_flag("--homogenize", reduce.homogenize,
                       "fold b into A after normalizing (simplex)");

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "compute an eps-KKT point");
  solve_cmd->add_option("--instance", solve.instance, "file or directory")
      ->required();
  solve_cmd->add_option("--out", solve.out, "point file (or directory)");
  solve_cmd->add_option("--start", solve.flags.start, "start point file");
  AddSolverFlags(solve_cmd, solve.flags);

  PipelineOptions pipeline;
  auto* pipeline_cmd = app.add_subcommand(
      "pipeline", "reduce, solve to delta-KKT, audit, pull back, verify");
  pipeline_cmd->add_option("--instance", pipeline.instance,
                           "box_qp file or directory")
      ->required();
  pipeline_cmd->add_option("--certificate", pipeline.certificate,
                           "use this certificate instead of reducing");
  pipeline_cmd->add_option("--out-dir", pipeline.out_dir,
                           "write intermediate artifacts here");
  pipeline_cmd->add_option("--start", pipeline.start,
                           "lift (box solve lifted to x, 1-x, n) or "
                           "barycenter");
  AddSolverFlags(pipeline_cmd, pipeline.flags);

  AuditOptions audit;
  auto* audit_cmd = app.add_subcommand(
      "audit", "re-verify a constructed point against its certificate");
  audit_cmd->add_option("--certificate", audit.certificate, "certificate file")
      ->required();
  audit_cmd->add_option("--point", audit.point, "constructed point file")
      ->required();

  BridgeOptions bridge;
  auto* bridge_cmd =
      app.add_subcommand("bridge", "translate between games and QPs");
  bridge_cmd->add_option("--direction", bridge.direction,
                         "game-to-qp, qp-to-game, imitation-forward, "
                         "imitation-backward")
      ->required();
  bridge_cmd->add_option("--instance", bridge.instance, "game or simplex_qp file")
      ->required();
  bridge_cmd->add_option("--point", bridge.point,
                         "point or profile to translate");
  bridge_cmd->add_option("--out", bridge.out, "translated instance or point");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const auto started = std::chrono::steady_clock::now();
  Outcome outcome;
  CLI::App* cmd = app.get_subcommands().front();
  try {
    if (cmd == gen_cmd) {
      outcome = CmdGen(gen, g);
    } else if (cmd == verify_cmd) {
      outcome = CmdVerify(verify, g);
    } else if (cmd == reduce_cmd) {
      outcome = CmdReduce(reduce, g);
    } else if (cmd == solve_cmd) {
      outcome = CmdSolve(solve, g);
    } else if (cmd == pipeline_cmd) {
      outcome = CmdPipeline(pipeline, g);
    } else if (cmd == audit_cmd) {
      outcome = CmdAudit(audit, g);
    } else {
      outcome = CmdBridge(bridge, g);
    }
  } catch (const Error& e) {
    err << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << "\n";
    return kExitInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::logic_error& e) {
    err << "internal check failed: " << e.what() << "\n";
    return kExitFailed;
  }

  if (outcome.raw_output) {
    out << *outcome.raw_output;
    return outcome.exit_code;
  }
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - started)
                             .count();
  Json report;
  report["command"] = Echo(args);
  report["subcommand"] = cmd->get_name();
  for (auto& [key, value] : outcome.report.items()) report[key] = value;
  report["exit_code"] = outcome.exit_code;
  report["wall_time_seconds"] = seconds;
  const std::string text = report.dump(2) + "\n";
  if (report_path.empty()) {
    out << text;
  } else {
    try {
      WriteTextFile(report_path, text);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitInputError;
    }
  }
  return outcome.exit_code;
}

}  // namespace qpkkt::cli
