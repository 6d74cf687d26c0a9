#pragma once

// Problem inputs (ideal or matrix presentations), the on-disk elimination
// cache, the end-to-end computation for each presentation, and the
// cross-check between the determinant path and the Gröbner path.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lindstrom/algmat.hpp"
#include "lindstrom/circuit_vector.hpp"
#include "lindstrom/element_set.hpp"
#include "lindstrom/error.hpp"
#include "lindstrom/ffpoly.hpp"
#include "lindstrom/groebner.hpp"
#include "lindstrom/toric.hpp"
#include "lindstrom/valmat.hpp"

namespace lindstrom::cli {

using json = nlohmann::json;

inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

struct ProblemInput {
  enum class Kind { ideal, matrix };

  Kind kind = Kind::ideal;
  std::uint64_t p = 2;
  std::vector<std::string> vars;
  std::vector<std::string> generators;
  std::optional<IntMatrix> matrix;
  std::optional<std::vector<long long>> seed_basis;  // 1-based labels
  std::string hash;

  std::size_t n() const { return kind == Kind::ideal ? vars.size() : matrix->cols(); }
};

namespace detail {

inline const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidArgument(std::string("input is missing \"") + key + "\"");
  return doc.at(key);
}

}  // namespace detail

inline ProblemInput parse_problem(const json& doc) {
  if (!doc.is_object()) throw InvalidArgument("input must be a JSON object");
  ProblemInput in;
  const json& kind = detail::require(doc, "kind");
  const json& p = detail::require(doc, "p");
  if (!p.is_number_unsigned()) throw InvalidArgument("\"p\" must be a positive integer");
  in.p = p.get<std::uint64_t>();
  PrimeField check(in.p);
  (void)check;

  json canonical = {{"kind", kind}, {"p", in.p}};
  if (kind == "ideal") {
    in.kind = ProblemInput::Kind::ideal;
    const json& vars = detail::require(doc, "vars");
    const json& gens = detail::require(doc, "generators");
    if (!vars.is_array() || vars.empty()) throw InvalidArgument("\"vars\" must be a nonempty array of names");
    if (!gens.is_array()) throw InvalidArgument("\"generators\" must be an array of strings");
    for (const json& v : vars) {
      if (!v.is_string()) throw InvalidArgument("variable names must be strings");
      in.vars.push_back(v.get<std::string>());
    }
    for (const json& g : gens) {
      if (!g.is_string()) throw InvalidArgument("generators must be strings");
      in.generators.push_back(g.get<std::string>());
    }
    make_ring(in.vars, in.p);  // rejects duplicates
    canonical["vars"] = in.vars;
    canonical["generators"] = in.generators;
  } else if (kind == "matrix") {
    in.kind = ProblemInput::Kind::matrix;
    const json& rows = detail::require(doc, "rows");
    const json& cols = detail::require(doc, "cols");
    const json& entries = detail::require(doc, "entries");
    if (!rows.is_number_unsigned() || !cols.is_number_unsigned()) {
      throw InvalidArgument("\"rows\" and \"cols\" must be positive integers");
    }
    const auto d = rows.get<std::size_t>(), n = cols.get<std::size_t>();
    if (!entries.is_array() || entries.size() != d) throw InvalidArgument("\"entries\" must have \"rows\" rows");
    std::vector<std::vector<long long>> values;
    for (const json& row : entries) {
      if (!row.is_array() || row.size() != n) throw InvalidArgument("each row must have \"cols\" entries");
      std::vector<long long> r;
      for (const json& x : row) {
        if (!x.is_number_integer()) throw InvalidArgument("matrix entries must be integers");
        r.push_back(x.get<long long>());
      }
      values.push_back(std::move(r));
    }
    if (n > ElementSet::kMaxElements) throw InvalidArgument("at most 64 columns are supported");
    in.matrix = IntMatrix::from_rows(values);
    canonical["rows"] = d;
    canonical["cols"] = n;
    canonical["entries"] = values;
  } else {
    throw InvalidArgument("\"kind\" must be \"ideal\" or \"matrix\"");
  }
  if (doc.contains("seed_basis")) {
    const json& seed = doc.at("seed_basis");
    if (!seed.is_array()) throw InvalidArgument("\"seed_basis\" must be an array of labels");
    in.seed_basis = seed.get<std::vector<long long>>();
  }
  in.hash = fnv1a_hex(canonical.dump());
  return in;
}

inline ProblemInput load_problem(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw InvalidArgument("cannot read input file " + path.string());
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::exception& e) {
    throw InvalidArgument("invalid JSON in " + path.string() + ": " + e.what());
  }
  return parse_problem(doc);
}

inline Ideal problem_ideal(const ProblemInput& in) {
  RingPtr ring = make_ring(in.vars, in.p);
  std::vector<Polynomial> gens;
  for (const std::string& g : in.generators) gens.push_back(parse_polynomial(g, ring));
  return Ideal(ring, std::move(gens));
}

// Elimination bases stored as one file per (key, kept set). Files are
// written to a unique temporary name and renamed into place, so processes
// sharing a directory only ever see complete files.
class DiskCache : public EliminationStore {
 public:
  DiskCache(std::filesystem::path dir, std::string key, RingPtr ring)
      : dir_(std::move(dir)), key_(std::move(key)), ring_(std::move(ring)) {
    std::filesystem::create_directories(dir_);
  }

  std::optional<std::vector<Polynomial>> load(ElementSet keep) override {
    std::ifstream file(path_for(keep));
    if (!file) return std::nullopt;
    std::string line;
    if (!std::getline(file, line) || line != kHeader) return std::nullopt;
    std::size_t count = 0;
    if (!std::getline(file, line)) return std::nullopt;
    try {
      count = std::stoul(line);
      std::vector<Polynomial> out;
      for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(file, line)) return std::nullopt;
        out.push_back(parse_polynomial(line, ring_));
      }
      ++hits_;
      return out;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void save(ElementSet keep, const std::vector<Polynomial>& basis) override {
    const auto target = path_for(keep);
    std::random_device rd;
    auto tmp = target;
    tmp += ".tmp" + std::to_string(rd()) + std::to_string(rd());
    {
      std::ofstream file(tmp);
      if (!file) return;
      file << kHeader << "\n" << basis.size() << "\n";
      for (const Polynomial& f : basis) file << f.to_string() << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

  std::size_t hits() const { return hits_; }

 private:
  static constexpr const char* kHeader = "lindstrom-elimination-v1";

  std::filesystem::path path_for(ElementSet keep) const {
    std::ostringstream name;
    name << key_ << "-" << std::hex << keep.bits() << ".gb";
    return dir_ / name.str();
  }

  std::filesystem::path dir_;
  std::string key_;
  RingPtr ring_;
  std::size_t hits_ = 0;
};

// Everything the subcommands report about one input.
struct Analysis {
  std::size_t n = 0;
  std::uint64_t p = 2;
  Valuation valuation;
  std::vector<ValuatedCircuit> circuits;    // sorted
  std::vector<CircuitRecord> records;       // Gröbner path only
  std::vector<KernelCircuit> kernel;        // matrix path only
};

struct PipelineOptions {
  std::optional<std::filesystem::path> cache_dir;
  bool seed_from_input = false;
};

inline std::optional<ElementSet> seed_of(const ProblemInput& in, const PipelineOptions& options) {
  if (!options.seed_from_input) return std::nullopt;
  if (!in.seed_basis) throw InvalidArgument("--seed-basis given needs \"seed_basis\" in the input");
  return ElementSet::from_labels(*in.seed_basis, in.n());
}

// Gröbner path: circuits and circuit polynomials by elimination, then the
// valuation by exchange propagation.
inline Analysis analyze_ideal(const Ideal& ideal, EliminationStore* store = nullptr,
                              std::optional<ElementSet> seed = {}) {
  AlgebraicMatroid am(ideal, store);
  std::vector<CircuitRecord> records = am.circuits();
  Matroid m = am.matroid();
  std::vector<ValuatedCircuit> vc = valuated_circuits(records);
  Valuation nu = valuation_from_circuits(m, vc, seed);
  sort_and_dedupe(vc);
  return Analysis{ideal.nvars(), ideal.ring()->field.characteristic(), std::move(nu), std::move(vc),
                  std::move(records), {}};
}

// Determinant path: valuation from p-adic minors, circuits from primitive
// kernel vectors.
inline Analysis analyze_matrix(const IntMatrix& a, std::uint64_t p) {
  Valuation nu = linear_valuated_matroid(a, p);
  std::vector<KernelCircuit> kernel = integer_kernel_circuits(a);
  std::vector<ValuatedCircuit> vc;
  for (const KernelCircuit& k : kernel) vc.push_back(toric_valuated_circuit(k, p));
  sort_and_dedupe(vc);
  return Analysis{a.cols(), p, std::move(nu), std::move(vc), {}, std::move(kernel)};
}

inline Analysis analyze(const ProblemInput& in, const PipelineOptions& options = {}) {
  if (in.kind == ProblemInput::Kind::matrix) return analyze_matrix(*in.matrix, in.p);
  Ideal ideal = problem_ideal(in);
  std::optional<DiskCache> cache;
  if (options.cache_dir) cache.emplace(*options.cache_dir, "ideal-" + in.hash, ideal.ring());
  return analyze_ideal(ideal, cache ? &*cache : nullptr, seed_of(in, options));
}

struct CrossCheckReport {
  bool matroids_equal = false;
  bool valuations_equal = false;
  bool circuits_equal = false;
  std::vector<std::string> differences;
  Analysis linear;
  Analysis algebraic;

  bool agree() const { return matroids_equal && valuations_equal && circuits_equal; }
};

// Runs the determinant path on A and the Gröbner path on toric_ideal(A, p)
// and compares bases, valuations and canonical circuit families.
inline CrossCheckReport cross_check(const IntMatrix& a, std::uint64_t p, EliminationStore* store = nullptr) {
  Analysis linear = analyze_matrix(a, p);
  Analysis algebraic = analyze_ideal(toric_ideal(a, p), store);
  CrossCheckReport report{false, false, false, {}, linear, algebraic};
  const Matroid& ml = linear.valuation.matroid();
  const Matroid& ma = algebraic.valuation.matroid();
  report.matroids_equal = ml == ma;
  if (!report.matroids_equal) report.differences.push_back("basis families differ");
  report.valuations_equal = linear.valuation == algebraic.valuation;
  if (report.matroids_equal && !report.valuations_equal) {
    for (ElementSet b : ml.bases()) {
      if (linear.valuation.at(b) != algebraic.valuation.at(b)) {
        report.differences.push_back("value of " + b.to_string() + ": determinant " +
                                     std::to_string(linear.valuation.at(b)) + ", Groebner " +
                                     std::to_string(algebraic.valuation.at(b)));
      }
    }
  } else if (!report.valuations_equal) {
    report.differences.push_back("valuations differ");
  }
  report.circuits_equal = linear.circuits == algebraic.circuits;
  if (!report.circuits_equal) {
    for (const ValuatedCircuit& c : linear.circuits) {
      if (std::find(algebraic.circuits.begin(), algebraic.circuits.end(), c) == algebraic.circuits.end()) {
        report.differences.push_back("circuit " + c.to_string() + " only on the determinant path");
      }
    }
    for (const ValuatedCircuit& c : algebraic.circuits) {
      if (std::find(linear.circuits.begin(), linear.circuits.end(), c) == linear.circuits.end()) {
        report.differences.push_back("circuit " + c.to_string() + " only on the Groebner path");
      }
    }
  }
  return report;
}

}  // namespace lindstrom::cli
