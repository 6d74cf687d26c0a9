#pragma once

// Command-line front end. run() parses argv, computes the requested
// objects and writes text or JSON.
//
// Exit codes: 0 success, 1 input error, 2 verification failure or
// cross-check disagreement, 3 internal inconsistency.

#include <cstdint>
#include <limits>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lindstrom/error.hpp"
#include "lindstrom/flock.hpp"
#include "lindstrom/pipeline.hpp"
#include "lindstrom/valmat.hpp"

namespace lindstrom::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kVerificationFailed = 2, kInternalError = 3 };

struct OutputOptions {
  bool json = false;
  bool ascii = false;
};

namespace detail {

inline json set_json(ElementSet s) { return s.labels(); }

inline json entries_json(const CircuitVector& c) {
  json out = json::array();
  for (ExtendedInt x : c.entries()) {
    if (x.is_infinite()) {
      out.push_back("inf");
    } else {
      out.push_back(x.value());
    }
  }
  return out;
}

inline json bigint_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

inline json circuits_json(const std::vector<ValuatedCircuit>& circuits) {
  json out = json::array();
  for (const ValuatedCircuit& c : circuits) out.push_back({{"entries", entries_json(c)}});
  return out;
}

inline json valuation_json(const Valuation& nu, std::uint64_t p, const std::vector<ValuatedCircuit>& circuits,
                           const std::vector<ValuatedCircuit>& cocircuits) {
  json bases = json::array();
  for (ElementSet b : nu.matroid().bases()) bases.push_back({{"set", set_json(b)}, {"value", nu.at(b)}});
  return {{"n", nu.n()},
          {"rank", nu.matroid().rank()},
          {"p", p},
          {"bases", std::move(bases)},
          {"circuits", circuits_json(circuits)},
          {"cocircuits", circuits_json(cocircuits)}};
}

inline std::string text_set(ElementSet s) { return s.to_string(); }

inline void print_circuits(std::ostream& out, const char* title, const std::vector<ValuatedCircuit>& circuits,
                           const OutputOptions& opt) {
  out << title << " (" << circuits.size() << "):\n";
  for (const ValuatedCircuit& c : circuits) {
    out << "  " << text_set(c.support()) << " " << c.to_string(opt.ascii) << "\n";
  }
}

inline void print_valuation(std::ostream& out, const Valuation& nu, std::uint64_t p, const OutputOptions& opt,
                            const std::vector<ValuatedCircuit>& circuits,
                            const std::vector<ValuatedCircuit>& cocircuits) {
  out << "n = " << nu.n() << ", rank = " << nu.matroid().rank() << ", p = " << p << "\n";
  out << "bases (" << nu.matroid().bases().size() << "):\n";
  for (ElementSet b : nu.matroid().bases()) out << "  " << text_set(b) << " " << nu.at(b) << "\n";
  print_circuits(out, "circuits", circuits, opt);
  print_circuits(out, "cocircuits", cocircuits, opt);
}

inline void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

inline json report_json(const AxiomReport& r) {
  json violations = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < 20; ++i) violations.push_back(r.violations[i]);
  return {{"name", r.name},
          {"checks", r.checks},
          {"passed", r.passed()},
          {"violation_count", r.violations.size()},
          {"violations", std::move(violations)}};
}

}  // namespace detail

// All axiom suites for one input. The flock box is [-radius, radius]^n.
inline std::vector<AxiomReport> verify_all(const Analysis& analysis, std::int64_t radius) {
  const Valuation& nu = analysis.valuation;
  std::vector<ValuatedCircuit> co = cocircuits(nu);
  std::vector<AxiomReport> reports;
  reports.push_back(check_circuit_axioms(analysis.circuits, nu.matroid()));
  reports.push_back(check_exchange_relation(nu, analysis.circuits));
  reports.push_back(check_duality(nu));
  reports.push_back(check_orthogonality(analysis.circuits, co));
  reports.push_back(check_cocircuit_supports(co, nu.matroid()));
  AxiomReport same{"circuits read off the valuation match the computed circuits", 0, {}};
  same.expect(circuits_of(nu) == analysis.circuits, "circuit families differ");
  reports.push_back(std::move(same));
  const auto box = alpha_box(nu.n(), -radius, radius);
  reports.push_back(check_flock_axioms(nu, box));
  return reports;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Valuated matroids of algebraic field extensions in characteristic p", "lindstrom"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::string cache_dir;
  std::string seed_mode = "lex";
  bool ascii = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cache", cache_dir, "Directory for cached elimination results");
  app.add_option("--seed-basis", seed_mode, "Seed basis for valuation propagation")
      ->check(CLI::IsMember({"lex", "given"}));
  app.add_flag("--ascii", ascii, "Print infinity as 'inf' in text output");

  std::string input;
  auto add_command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", input, "Problem file (JSON)")->required();
    return sub;
  };
  CLI::App* circuits_cmd = add_command("circuits", "Valuated circuits (with circuit polynomials or kernel vectors)");
  CLI::App* bases_cmd = add_command("bases", "Bases of the underlying matroid");
  CLI::App* valuation_cmd = add_command("valuation", "Basis valuation with circuits and cocircuits");
  CLI::App* cocircuits_cmd = add_command("cocircuits", "Valuated cocircuits and their hyperplanes");
  CLI::App* minor_cmd = add_command("minor", "Valuated minor M \\ G / F");
  std::vector<long long> delete_labels, contract_labels;
  minor_cmd->add_option("--delete", delete_labels, "Elements to delete")->delimiter(',');
  minor_cmd->add_option("--contract", contract_labels, "Elements to contract")->delimiter(',');
  CLI::App* flock_cmd = add_command("flock", "Flock slice M_alpha");
  std::vector<long long> alpha_values;
  flock_cmd->add_option("--alpha", alpha_values, "Weight vector c1,...,cn")->delimiter(',')->required();
  CLI::App* verify_cmd = add_command("verify", "Run every axiom suite");
  std::optional<std::int64_t> box;
  verify_cmd->add_option("--box", box, "Flock box radius R, checking [-R,R]^n");
  CLI::App* cross_cmd = add_command("cross-check", "Compare determinant and Groebner paths (matrix input)");

  std::vector<std::string> argv_copy(args.rbegin(), args.rend());
  try {
    app.parse(argv_copy);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const OutputOptions opt{format == "json", ascii};
  PipelineOptions pipeline;
  if (!cache_dir.empty()) pipeline.cache_dir = cache_dir;
  pipeline.seed_from_input = seed_mode == "given";

  try {
    const ProblemInput problem = load_problem(input);

    if (*cross_cmd) {
      if (problem.kind != ProblemInput::Kind::matrix) throw InvalidArgument("cross-check needs a matrix input");
      std::optional<DiskCache> cache;
      if (pipeline.cache_dir) {
        cache.emplace(*pipeline.cache_dir, "toric-" + problem.hash,
                      make_indexed_ring(problem.matrix->cols(), problem.p));
      }
      CrossCheckReport report = cross_check(*problem.matrix, problem.p, cache ? &*cache : nullptr);
      if (opt.json) {
        detail::emit(out, {{"input_hash", problem.hash},
                           {"agree", report.agree()},
                           {"matroids_equal", report.matroids_equal},
                           {"valuations_equal", report.valuations_equal},
                           {"circuits_equal", report.circuits_equal},
                           {"differences", report.differences}});
      } else {
        out << (report.agree() ? "paths agree" : "paths DISAGREE") << "\n";
        out << "  bases: " << (report.matroids_equal ? "equal" : "differ") << "\n";
        out << "  valuations: " << (report.valuations_equal ? "equal" : "differ") << "\n";
        out << "  circuits: " << (report.circuits_equal ? "equal" : "differ") << "\n";
        for (const std::string& d : report.differences) out << "  " << d << "\n";
      }
      return report.agree() ? kOk : kVerificationFailed;
    }

    const Analysis analysis = analyze(problem, pipeline);
    const Valuation& nu = analysis.valuation;

    if (*circuits_cmd) {
      if (opt.json) {
        json list = json::array();
        for (const CircuitRecord& rec : analysis.records) {
          list.push_back({{"set", detail::set_json(rec.support)},
                          {"polynomial", rec.polynomial.to_string()},
                          {"entries", detail::entries_json(circuit_vector(rec.polynomial).canonical())}});
        }
        for (const KernelCircuit& k : analysis.kernel) {
          json u = json::array();
          for (const BigInt& x : k.u) u.push_back(detail::bigint_json(x));
          list.push_back({{"set", detail::set_json(k.support)},
                          {"kernel", std::move(u)},
                          {"entries", detail::entries_json(toric_valuated_circuit(k, problem.p))}});
        }
        detail::emit(out, {{"input_hash", problem.hash}, {"n", analysis.n}, {"p", analysis.p}, {"circuits", list}});
      } else {
        out << "circuits (" << analysis.records.size() + analysis.kernel.size() << "):\n";
        for (const CircuitRecord& rec : analysis.records) {
          out << "  " << rec.support.to_string() << " " << circuit_vector(rec.polynomial).canonical().to_string(ascii)
              << "  " << rec.polynomial.to_string() << "\n";
        }
        for (const KernelCircuit& k : analysis.kernel) {
          out << "  " << k.support.to_string() << " " << toric_valuated_circuit(k, problem.p).to_string(ascii)
              << "  u = (";
          for (std::size_t i = 0; i < k.u.size(); ++i) out << (i ? "," : "") << k.u[i];
          out << ")\n";
        }
      }
    } else if (*bases_cmd) {
      if (opt.json) {
        json list = json::array();
        for (ElementSet b : nu.matroid().bases()) list.push_back(detail::set_json(b));
        detail::emit(out, {{"input_hash", problem.hash},
                           {"n", analysis.n},
                           {"rank", nu.matroid().rank()},
                           {"p", analysis.p},
                           {"bases", std::move(list)}});
      } else {
        out << "rank = " << nu.matroid().rank() << ", bases (" << nu.matroid().bases().size() << "):\n";
        for (ElementSet b : nu.matroid().bases()) out << "  " << b.to_string() << "\n";
      }
    } else if (*valuation_cmd) {
      const auto co = cocircuits(nu);
      if (opt.json) {
        json doc = detail::valuation_json(nu, analysis.p, analysis.circuits, co);
        doc["input_hash"] = problem.hash;
        detail::emit(out, doc);
      } else {
        detail::print_valuation(out, nu, analysis.p, opt, analysis.circuits, co);
      }
    } else if (*cocircuits_cmd) {
      const auto co = cocircuits(nu);
      if (opt.json) {
        json list = json::array();
        for (const ValuatedCircuit& d : co) {
          list.push_back({{"hyperplane", detail::set_json(nu.matroid().ground() - d.support())},
                          {"entries", detail::entries_json(d)}});
        }
        detail::emit(out, {{"input_hash", problem.hash}, {"n", analysis.n}, {"p", analysis.p}, {"cocircuits", list}});
      } else {
        out << "cocircuits (" << co.size() << "):\n";
        for (const ValuatedCircuit& d : co) {
          out << "  H = " << (nu.matroid().ground() - d.support()).to_string() << " " << d.to_string(ascii) << "\n";
        }
      }
    } else if (*minor_cmd) {
      const ElementSet del = ElementSet::from_labels(delete_labels, analysis.n);
      const ElementSet con = ElementSet::from_labels(contract_labels, analysis.n);
      const Valuation m = minor(nu, del, con);
      const auto mc = circuits_of(m);
      const auto mco = cocircuits(m);
      if (opt.json) {
        json doc = detail::valuation_json(m, analysis.p, mc, mco);
        doc["input_hash"] = problem.hash;
        doc["deleted"] = detail::set_json(del);
        doc["contracted"] = detail::set_json(con);
        doc["ground"] = detail::set_json(m.matroid().ground());
        detail::emit(out, doc);
      } else {
        out << "minor deleting " << del.to_string() << ", contracting " << con.to_string() << ", ground "
            << m.matroid().ground().to_string() << "\n";
        detail::print_valuation(out, m, analysis.p, opt, mc, mco);
      }
    } else if (*flock_cmd) {
      Alpha alpha(alpha_values.begin(), alpha_values.end());
      const FlockSlice slice = flock_slice(nu, alpha);
      if (opt.json) {
        json list = json::array();
        for (ElementSet b : slice.matroid.bases()) list.push_back(detail::set_json(b));
        detail::emit(out, {{"input_hash", problem.hash},
                           {"alpha", alpha},
                           {"g", slice.g_value},
                           {"rank", slice.matroid.rank()},
                           {"bases", std::move(list)}});
      } else {
        out << "alpha = " << alpha_to_string(alpha) << "\n";
        out << "g = " << slice.g_value << "\n";
        out << "bases (" << slice.matroid.bases().size() << "):\n";
        for (ElementSet b : slice.matroid.bases()) out << "  " << b.to_string() << "\n";
      }
    } else if (*verify_cmd) {
      const std::int64_t radius = box.value_or(default_box_radius(nu));
      if (radius < 0) throw InvalidArgument("--box must be non-negative");
      const auto reports = verify_all(analysis, radius);
      bool passed = true;
      for (const AxiomReport& r : reports) passed = passed && r.passed();
      if (opt.json) {
        json suites = json::array();
        for (const AxiomReport& r : reports) suites.push_back(detail::report_json(r));
        detail::emit(out, {{"input_hash", problem.hash}, {"passed", passed}, {"box", radius}, {"suites", suites}});
      } else {
        for (const AxiomReport& r : reports) {
          out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)\n";
          for (std::size_t i = 0; i < r.violations.size() && i < 20; ++i) out << "    " << r.violations[i] << "\n";
        }
        out << (passed ? "all suites passed" : "verification FAILED") << "\n";
      }
      return passed ? kOk : kVerificationFailed;
    }
    return kOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace lindstrom::cli
