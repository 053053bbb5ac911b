#pragma once

// The lrc command line. run() is the whole program minus process setup so
// tests can drive it in-process.
//
// Exit status: 0 ok, 1 error, 2 verification failed, 64 usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lrc/lrc.hpp"

namespace lrc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitUsage = 64;
inline constexpr std::size_t kMaxCircuitSize = 8;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kParse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kParse, "cannot write " + path);
  out << text;
}

inline LinearCode load_code(const std::string& path) {
  std::istringstream in(slurp(path));
  return read_code(in);
}

inline LocalityAssignment load_locality(const std::string& path) {
  std::istringstream in(slurp(path));
  return read_locality(in);
}

inline std::string code_text(const LinearCode& c) {
  std::ostringstream os;
  write_code(os, c);
  return os.str();
}

inline std::string locality_text(const LocalityAssignment& a) {
  std::ostringstream os;
  write_locality(os, a);
  return os.str();
}

inline std::uint64_t env_budget() {
  const char* env = std::getenv("LRC_BUDGET");
  if (!env || !*env) return kDefaultDistanceBudget;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size() || v == 0) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("LRC_BUDGET must be a positive integer, got '") + env + "'");
  }
}

inline DistanceMethod parse_method(const std::string& s) {
  if (s == "auto") return DistanceMethod::kAuto;
  if (s == "projective") return DistanceMethod::kProjective;
  if (s == "flats") return DistanceMethod::kFlats;
  throw UsageError("--method must be auto, projective or flats");
}

inline std::vector<std::size_t> parse_list(const std::string& s, const std::string& flag) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError(flag + ": bad list entry '" + tok + "'");
    }
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

inline Json locality_json(const LocalityAssignment& a) {
  Json arr = Json::array();
  for (const auto& s : a.sets()) arr.push_back(s);
  return arr;
}

/// Attaches code and locality to a report and writes prefix.{code,loc,json}.
inline void emit_artifacts(Json& report, const LinearCode& code, const LocalityAssignment& a, const std::string& out_prefix) {
  report["code"] = code_text(code);
  report["locality_sets"] = locality_json(a);
  if (out_prefix.empty()) return;
  spit(out_prefix + ".code", code_text(code));
  spit(out_prefix + ".loc", locality_text(a));
  report["files"] = Json{{"code", out_prefix + ".code"}, {"locality", out_prefix + ".loc"}, {"report", out_prefix + ".json"}};
  spit(out_prefix + ".json", report.dump(2) + "\n");
}

/// Blocks are the distinct repair sets.
inline std::vector<std::vector<std::size_t>> blocks_of(const LocalityAssignment& a) {
  std::set<std::vector<std::size_t>> uniq(a.sets().begin(), a.sets().end());
  return {uniq.begin(), uniq.end()};
}

inline bool admissible(const LocalityAssignment& a, const std::vector<bool>& erased, std::size_t delta) {
  for (std::size_t j = 1; j <= a.size(); ++j) {
    if (!erased[j - 1]) continue;
    std::size_t c = 0;
    for (std::size_t s : a.set_of(j)) c += erased[s - 1];
    if (c >= delta) return false;
  }
  return true;
}

/// Survivors of S_j read, in set order, until column j is in their span.
inline std::size_t symbols_read(const LinearCode& code, const LocalityAssignment& a, const std::vector<bool>& erased, std::size_t j) {
  const Matrix& g = code.generator();
  const auto target = g.column(j - 1);
  std::vector<std::size_t> used;
  if (std::all_of(target.begin(), target.end(), [](Value v) { return v == 0; })) return 0;
  for (std::size_t s : a.set_of(j)) {
    if (erased[s - 1]) continue;
    used.push_back(s - 1);
    if (in_span(g, used, target)) return used.size();
  }
  return used.size();
}

inline std::vector<Value> random_message(Rng& rng, const Field& f, std::size_t k) {
  std::vector<Value> m(k);
  for (auto& x : m) x = static_cast<Value>(uniform_below(rng, f.order()));
  return m;
}

inline void pick_in_block(Rng& rng, const std::vector<std::size_t>& block, std::size_t count, std::vector<bool>& erased) {
  std::vector<std::size_t> pool = block;
  for (std::size_t t = 0; t < count && !pool.empty(); ++t) {
    const auto idx = uniform_below(rng, pool.size());
    erased[pool[idx] - 1] = true;
    pool.erase(pool.begin() + static_cast<long>(idx));
  }
}

}  // namespace detail

struct SimulationStats {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t repair_impossible = 0;
  std::uint64_t wrong = 0;
  std::uint64_t symbols_repaired = 0;
  std::uint64_t symbols_read = 0;
  std::size_t max_read = 0;
};

/// Erasure models: "uniform" draws 0..delta-1 erasures per block,
/// "adversarial" erases delta-1 in every block, "overload" erases delta
/// symbols of one random block.
inline SimulationStats simulate_repair(const LinearCode& code, const LocalityAssignment& a, std::size_t delta, std::uint64_t trials,
                                       const std::string& model, std::uint64_t seed) {
  const auto blocks = detail::blocks_of(a);
  const std::size_t n = code.length();
  SimulationStats st;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = make_rng({seed, t});
    const auto msg = detail::random_message(rng, code.field(), code.dimension());
    const auto word = code.encode(msg);
    std::vector<bool> erased(n, false);
    for (int tries = 0;; ++tries) {
      std::fill(erased.begin(), erased.end(), false);
      if (model == "uniform") {
        for (const auto& b : blocks) detail::pick_in_block(rng, b, uniform_below(rng, delta), erased);
      } else if (model == "adversarial") {
        for (const auto& b : blocks) detail::pick_in_block(rng, b, delta - 1, erased);
      } else {
        detail::pick_in_block(rng, blocks[uniform_below(rng, blocks.size())], delta, erased);
        break;
      }
      if (detail::admissible(a, erased, delta) || tries > 1000) break;
    }
    ReceivedWord received(n);
    for (std::size_t i = 0; i < n; ++i)
      if (!erased[i]) received[i] = word[i];
    ++st.trials;
    try {
      const auto out = repair(code, a, received, delta);
      if (out != word) {
        ++st.wrong;
        continue;
      }
      ++st.successes;
      for (std::size_t j = 1; j <= n; ++j) {
        if (!erased[j - 1]) continue;
        const std::size_t reads = detail::symbols_read(code, a, erased, j);
        ++st.symbols_repaired;
        st.symbols_read += reads;
        st.max_read = std::max(st.max_read, reads);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRepairImpossible) throw;
      ++st.repair_impossible;
    }
  }
  return st;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, transform and verify locally repairable codes", "lrc"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> budget_flag;
  app.add_option("--budget", budget_flag, "enumeration budget (overrides LRC_BUDGET)");

  std::size_t n = 0, k = 0, r = 0, delta = 0, i_index = 1, coord = 1, max_set = 4;
  std::uint64_t q = 0, seed = 0, retries = 32, trials = 1000, max_samples = 100'000;
  std::optional<std::uint64_t> poly, declared_d;
  std::string code_path, loc_path, spec_path, out_prefix, method = "auto", partition, name, erase, message, model = "uniform";
  bool json = false, vec = false;

  auto* bound = app.add_subcommand("bound", "print the distance bound");
  bound->add_option("--n", n)->required();
  bound->add_option("--k", k)->required();
  bound->add_option("--r", r)->required();
  bound->add_option("--delta", delta)->default_val(2);
  bound->add_flag("--vector", vec, "vector-linear bound (delta = 2)");
  bound->add_flag("--json", json);

  auto* mindist = app.add_subcommand("mindist", "exact minimum distance");
  mindist->add_option("code", code_path)->required();
  mindist->add_option("--method", method);

  auto* verify = app.add_subcommand("verify", "verify locality and classify against the bound");
  verify->add_option("code", code_path)->required();
  verify->add_option("--locality", loc_path)->required();
  verify->add_option("--r", r)->required();
  verify->add_option("--delta", delta)->required();

  auto* construct = app.add_subcommand("construct", "build a code");
  construct->require_subcommand(1);
  auto add_lrc_opts = [&](CLI::App* sub) {
    sub->add_option("--n", n)->required();
    sub->add_option("--k", k)->required();
    sub->add_option("--r", r)->required();
    sub->add_option("--delta", delta)->required();
    sub->add_option("--q", q)->required();
    sub->add_option("--poly", poly);
    sub->add_option("--partition", partition);
    sub->add_option("--seed", seed);
    sub->add_option("--out", out_prefix);
  };
  auto* almost = construct->add_subcommand("almost-optimal", "randomized construction, verified");
  add_lrc_opts(almost);
  almost->add_option("--retries", retries);
  auto* random = construct->add_subcommand("random", "one unverified draw");
  add_lrc_opts(random);
  auto* family = construct->add_subcommand("family", "quasi-uniform vector-linear family");
  family->add_option("--name", name)->required();
  family->add_option("--i", i_index)->required();
  family->add_option("--out", out_prefix);

  auto* enl = app.add_subcommand("enlarge", "(n,k,d,r) -> (n+1,k+1,d,r+1)");
  enl->add_option("code", code_path)->required();
  enl->add_option("--locality", loc_path)->required();
  enl->add_option("--r", r)->required();
  enl->add_option("--delta", delta)->required();
  enl->add_option("--d", declared_d);
  enl->add_option("--seed", seed);
  enl->add_option("--max-samples", max_samples);
  enl->add_option("--out", out_prefix);

  auto* punct = app.add_subcommand("puncture", "(n,k,d) -> (n-1,k-1,d' >= d)");
  punct->add_option("code", code_path)->required();
  punct->add_option("--locality", loc_path)->required();
  punct->add_option("--coord", coord);
  punct->add_option("--out", out_prefix);

  auto* quasi = app.add_subcommand("quasi", "vector-linear codes from subgroups");
  quasi->require_subcommand(1);
  auto* qverify = quasi->add_subcommand("verify", "parameters and optimality of a family spec");
  qverify->add_option("spec", spec_path)->required();
  qverify->add_option("--locality", loc_path);
  qverify->add_option("--max-set", max_set, "largest repair set tried by discovery");

  auto* rep = app.add_subcommand("repair", "erase symbols of a codeword and repair them");
  rep->add_option("code", code_path)->required();
  rep->add_option("--locality", loc_path)->required();
  rep->add_option("--delta", delta)->required();
  rep->add_option("--erase", erase)->required();
  rep->add_option("--message", message, "comma-separated message; random from --seed if absent");
  rep->add_option("--seed", seed);

  auto* sim = app.add_subcommand("simulate", "repair simulation");
  sim->add_option("code", code_path)->required();
  sim->add_option("--locality", loc_path)->required();
  sim->add_option("--delta", delta)->required();
  sim->add_option("--trials", trials);
  sim->add_option("--model", model)->check(CLI::IsMember({"uniform", "adversarial", "overload"}));
  sim->add_option("--seed", seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    DistanceOptions dopts;
    dopts.budget = budget_flag ? *budget_flag : detail::env_budget();
    dopts.method = detail::parse_method(method);

    if (*bound) {
      const long b = vec ? d_opt_vector(n, k, r) : d_opt(n, k, r, delta);
      if (json) {
        out << Json{{"schema", kReportSchema}, {"n", n}, {"k", k}, {"r", r}, {"delta", vec ? 2 : delta}, {"d_opt", b}}.dump(2) << "\n";
      } else {
        out << "d_opt = " << b << "\n";
      }
      return kExitOk;
    }

    if (*mindist) {
      const LinearCode code = detail::load_code(code_path);
      const auto res = min_distance(code, dopts);
      out << Json{{"schema", kReportSchema},
                  {"n", code.length()},
                  {"k", code.dimension()},
                  {"q", code.field().order()},
                  {"d", res.d},
                  {"method", to_string(res.method)},
                  {"work", res.work}}
                 .dump(2)
          << "\n";
      return kExitOk;
    }

    if (*verify) {
      const LinearCode code = detail::load_code(code_path);
      const LocalityAssignment a = detail::load_locality(loc_path);
      const auto loc = verify_locality(code, a, r, delta);
      const auto cls = classify_distance(code.length(), code.dimension(), r, delta, min_distance(code, dopts).d);
      out << verification_report(code, loc, cls, r, delta).dump(2) << "\n";
      return loc.all_pass && cls.label != Label::kBoundViolation ? kExitOk : kExitVerifyFailed;
    }

    if (*construct) {
      if (*family) {
        const Family fam = parse_family(name);
        const auto spec = family_build(fam, i_index);
        const auto loc = family_locality(spec, i_index);
        if (!loc) fail(ErrorCode::kInfeasible, "no repair sets found for the tail symbols");
        std::ostringstream spec_text;
        write_quasi_spec(spec_text, spec);
        const auto expect = family_params(fam, i_index);
        Json j{{"schema", kReportSchema},
               {"family", to_string(fam)},
               {"i", i_index},
               {"expected", Json{{"n", expect.n}, {"k", expect.k}, {"d", expect.d}, {"r", expect.r}}},
               {"spec", spec_text.str()},
               {"locality_sets", detail::locality_json(*loc)}};
        if (!out_prefix.empty()) {
          detail::spit(out_prefix + ".quc", spec_text.str());
          detail::spit(out_prefix + ".loc", detail::locality_text(*loc));
          j["files"] = Json{{"spec", out_prefix + ".quc"}, {"locality", out_prefix + ".loc"}, {"report", out_prefix + ".json"}};
          detail::spit(out_prefix + ".json", j.dump(2) + "\n");
        }
        out << j.dump(2) << "\n";
        return kExitOk;
      }

      const Field f = Field::from_order(q, poly);
      const PartitionSpec p = partition.empty() ? default_partition(n, k, r, delta)
                                                : PartitionSpec(detail::parse_list(partition, "--partition"), delta);
      if (*random) {
        RandomLrc cand = random_lrc(n, k, r, delta, f, p, seed);
        const bool full = rank(cand.generator) == k;
        Json j{{"schema", kReportSchema},
               {"params", Json{{"n", n}, {"k", k}, {"r", r}, {"delta", delta}}},
               {"field", f.describe()},
               {"partition", p.sizes()},
               {"z", cand.floor.z},
               {"floor", cand.floor.value},
               {"d_opt", d_opt(n, k, r, delta)},
               {"full_rank", full},
               {"verified", false},
               {"seed", seed},
               {"column_permutation", cand.permutation}};
        if (!full) {
          out << j.dump(2) << "\n";
          err << "draw is rank deficient; no code emitted\n";
          return kExitVerifyFailed;
        }
        detail::emit_artifacts(j, LinearCode(cand.generator), cand.assignment, out_prefix);
        out << j.dump(2) << "\n";
        return kExitOk;
      }

      ConstructOptions copts;
      copts.partition = p;
      copts.seed = seed;
      copts.max_retries = retries;
      copts.distance = dopts;
      try {
        const auto c = construct_almost_optimal(n, k, r, delta, f, copts);
        Json j = to_json(c.report);
        detail::emit_artifacts(j, c.code, c.assignment, out_prefix);
        out << j.dump(2) << "\n";
        return kExitOk;
      } catch (const ConstructionFailed& e) {
        Json j{{"schema", kReportSchema}, {"error", to_string(e.code())}, {"message", e.what()}};
        if (e.best()) {
          j["best"] = to_json(e.best()->report);
          j["best"]["label"] = "unverified-floor";
        }
        out << j.dump(2) << "\n";
        err << e.what() << "\n";
        return kExitVerifyFailed;
      }
    }

    if (*enl) {
      const LinearCode code = detail::load_code(code_path);
      const LocalityAssignment a = detail::load_locality(loc_path);
      EnlargeOptions eopts;
      eopts.seed = seed;
      eopts.max_samples = max_samples;
      eopts.distance = dopts;
      if (r + 1 > kMaxCircuitSize) throw UsageError("--r: circuit search is capped at size " + std::to_string(kMaxCircuitSize));
      const auto res = enlarge(code, a, r, delta, declared_d, eopts);
      const auto cls = classify(res.code, res.assignment, r + 1, delta, dopts);
      Json j{{"schema", kReportSchema},
             {"params", Json{{"n", res.code.length()}, {"k", res.code.dimension()}, {"d", res.d}, {"r", r + 1}, {"delta", delta}}},
             {"d_opt", cls.d_opt},
             {"gap", cls.gap},
             {"label", to_string(cls.label)},
             {"seed", seed},
             {"witness", to_json(res.witness)}};
      detail::emit_artifacts(j, res.code, res.assignment, out_prefix);
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*punct) {
      const LinearCode code = detail::load_code(code_path);
      const LocalityAssignment a = detail::load_locality(loc_path);
      const auto res = puncture(code, a, coord);
      Json j{{"schema", kReportSchema},
             {"coord", coord},
             {"params", Json{{"n", res.code.length()}, {"k", res.code.dimension()}, {"d", min_distance(res.code, dopts).d}}},
             {"input_d", min_distance(code, dopts).d},
             {"zero_column", res.zero_column}};
      detail::emit_artifacts(j, res.code, res.assignment, out_prefix);
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*qverify) {
      std::istringstream in(detail::slurp(spec_path));
      const auto spec = read_quasi_spec(in);
      std::optional<LocalityAssignment> a;
      if (!loc_path.empty()) a = detail::load_locality(loc_path);
      else a = discover_vector_locality(spec, max_set);
      if (!a) {
        out << Json{{"schema", kReportSchema}, {"locality_pass", false}, {"message", "no repair sets within --max-set"}}.dump(2) << "\n";
        return kExitVerifyFailed;
      }
      const auto v = quasi_verify(spec, *a);
      out << quasi_report(v).dump(2) << "\n";
      return v.locality.all_pass ? kExitOk : kExitVerifyFailed;
    }

    if (*rep) {
      const LinearCode code = detail::load_code(code_path);
      const LocalityAssignment a = detail::load_locality(loc_path);
      std::vector<Value> msg;
      if (!message.empty()) {
        for (auto v : detail::parse_list(message, "--message")) msg.push_back(static_cast<Value>(v));
        if (msg.size() != code.dimension()) throw UsageError("--message needs k entries");
        for (Value v : msg)
          if (!code.field().contains(v)) throw UsageError("--message entry outside the field");
      } else {
        Rng rng = make_rng({seed});
        msg = detail::random_message(rng, code.field(), code.dimension());
      }
      const auto word = code.encode(msg);
      ReceivedWord received(word.begin(), word.end());
      std::vector<std::size_t> erased = detail::parse_list(erase, "--erase");
      for (std::size_t e : erased) {
        if (e < 1 || e > code.length()) throw UsageError("--erase: symbol " + std::to_string(e) + " out of range");
        received[e - 1].reset();
      }
      Json j{{"schema", kReportSchema}, {"seed", seed}, {"original", word}, {"erased", erased}};
      try {
        const auto fixed = repair(code, a, received, delta);
        j["status"] = "repaired";
        j["repaired"] = fixed;
        j["match"] = fixed == word;
        out << j.dump(2) << "\n";
        return fixed == word ? kExitOk : kExitVerifyFailed;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kRepairImpossible) throw;
        j["status"] = to_string(e.code());
        j["message"] = e.what();
        out << j.dump(2) << "\n";
        return kExitVerifyFailed;
      }
    }

    if (*sim) {
      const LinearCode code = detail::load_code(code_path);
      const LocalityAssignment a = detail::load_locality(loc_path);
      const auto st = simulate_repair(code, a, delta, trials, model, seed);
      Json j{{"schema", kReportSchema},
             {"model", model},
             {"seed", seed},
             {"trials", st.trials},
             {"successes", st.successes},
             {"repair_impossible", st.repair_impossible},
             {"wrong", st.wrong},
             {"success_rate", st.trials ? static_cast<double>(st.successes) / static_cast<double>(st.trials) : 0.0},
             {"symbols_repaired", st.symbols_repaired},
             {"mean_symbols_read",
              st.symbols_repaired ? static_cast<double>(st.symbols_read) / static_cast<double>(st.symbols_repaired) : 0.0},
             {"max_symbols_read", st.max_read},
             {"mds_symbols_read", code.dimension()}};
      out << j.dump(2) << "\n";
      return st.wrong == 0 ? kExitOk : kExitVerifyFailed;
    }
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace lrc::cli
