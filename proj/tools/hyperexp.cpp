#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hyperexp/digits.hpp"
#include "hyperexp/envelope.hpp"
#include "hyperexp/expansions.hpp"
#include "hyperexp/linear_rep.hpp"
#include "hyperexp/stern.hpp"
#include "hyperexp/types.hpp"
#include "hyperexp/verify.hpp"

namespace {

using namespace hyperexp;

Int parse_nonnegative(const std::string& text) {
  if (text.empty() ||
      text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("expected a nonnegative integer, got '" +
                                text + "'");
  }
  return Int(text);
}

std::string rational_str(const Rational& x) {
  const Int num = boost::multiprecision::numerator(x);
  const Int den = boost::multiprecision::denominator(x);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

// Output sink: stdout by default, a file when --out is given. Plain LF
// line ends either way, so byte-for-byte reproducible.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw std::runtime_error("cannot open output file '" + path + "'");
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct ComputeOpts {
  std::int64_t base = 2;
  std::string n;
  std::string method = "cross";
};

int run_compute(const ComputeOpts& o) {
  const Base base(o.base);
  const Int n = parse_nonnegative(o.n);
  auto by_recurrence = [&] { return stern(base, n); };
  auto by_matrix = [&] { return evaluate_at(stern_rep(base), n); };
  auto by_oracle = [&] {
    return n == 0 ? Int(0) : count_expansions(base, n - 1);
  };
  Int result;
  if (o.method == "recurrence") {
    result = by_recurrence();
  } else if (o.method == "matrix") {
    result = by_matrix();
  } else if (o.method == "oracle") {
    result = by_oracle();
  } else {
    result = by_recurrence();
    const Int m = by_matrix();
    const Int c = by_oracle();
    if (m != result || c != result) {
      std::cerr << "engine mismatch at n = " << n << ": recurrence " << result
                << ", matrix " << m << ", oracle " << c << "\n";
      return 1;
    }
  }
  std::cout << result << "\n";
  return 0;
}

struct EnumerateOpts {
  std::int64_t base = 2;
  std::string n;
  std::uint64_t cap = 1000;
};

int run_enumerate(const EnumerateOpts& o) {
  const Base base(o.base);
  const Int n = parse_nonnegative(o.n);
  const ExpansionList list =
      list_expansions(base, n, static_cast<std::size_t>(o.cap));
  for (const HyperExpansion& e : list.items) {
    for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
      std::cout << (i ? "," : "") << e.coeffs[i];
    }
    std::cout << "\n";
  }
  if (list.truncated) {
    std::cerr << "listing truncated at " << list.items.size() << " of "
              << list.total << " expansions\n";
  }
  std::cout << "count " << list.total << "\n";
  return 0;
}

struct RecordsOpts {
  std::int64_t base = 2;
  int kmax = 20;
  std::uint64_t scan_limit = 1000000;
  std::string out;
};

int run_records(const RecordsOpts& o) {
  const Base base(o.base);
  const auto rows = convergence_report(base, o.kmax);
  const auto checks = verify_records(base, o.kmax, o.scan_limit);
  Sink sink(o.out);
  std::ostream& os = sink.stream();
  os << "k,position,value,ratio_to_bound,h_minus_bound,exhaustive\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ConvergenceRow& r = rows[i];
    os << r.k << "," << r.position << "," << r.value << ","
       << r.ratio_to_bound.str(25) << "," << r.h_minus_bound.str(25) << ","
       << (checks[i].exhaustive ? 1 : 0) << "\n";
  }
  int failures = 0;
  for (const RecordCheck& c : checks) {
    if (!c.ok) {
      ++failures;
      std::cerr << "record check failed at k = " << c.k << ": " << c.note
                << "\n";
    }
  }
  for (const ConvergenceRow& r : rows) {
    if (!r.cross_checked) {
      ++failures;
      std::cerr << "matrix cross-check failed at k = " << r.k << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

struct VerifyOpts {
  std::int64_t base = 2;
  std::string suite;
  std::uint64_t max = 0;
  bool max_given = false;
  int trials = 1000;
  std::uint64_t seed = 12345;
};

int run_verify(const VerifyOpts& o) {
  const Base base(o.base);
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::string extra;
  auto list_head = [](const auto& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size() && i < 5; ++i) {
      s += (i ? " " : "");
      if constexpr (std::is_same_v<std::decay_t<decltype(v[i])>, Rational>) {
        s += rational_str(v[i]);
      } else {
        s += v[i].str();
      }
    }
    return s;
  };
  if (o.suite == "envelope") {
    const auto r = verify_envelope(base, o.max_given ? o.max : 100000);
    checked = r.checked;
    violations = r.violations.size() + r.equality_failures.size();
    extra = "equalities " + std::to_string(r.equality_points.size()) +
            "\nequality_failures " +
            std::to_string(r.equality_failures.size()) + "\n";
    if (!r.violations.empty()) {
      std::cerr << "bound violated at: " << list_head(r.violations) << "\n";
    }
  } else if (o.suite == "strengthening") {
    const auto r = verify_strengthening(base, Int(o.max_given ? o.max : 100000));
    checked = r.checked;
    violations = r.violations.size();
    if (!r.violations.empty()) {
      std::cerr << "sharpened bound violated at: " << list_head(r.violations)
                << "\n";
    }
  } else if (o.suite == "h-recurrence") {
    const auto r = verify_h_recurrence(
        base, o.trials, Rational(o.max_given ? o.max : 1000000), o.seed);
    checked = r.checked;
    violations = r.violations.size();
    if (!r.violations.empty()) {
      std::cerr << "functional equation fails at: " << list_head(r.violations)
                << "\n";
    }
  } else if (o.suite == "identities") {
    const auto r = check_case_identities(base, Int(o.max_given ? o.max : 10000));
    checked = r.checked;
    violations = r.violations.size();
    for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) {
      const auto& v = r.violations[i];
      std::cerr << "identity " << v.identity << " fails at j = " << v.j
                << ": " << v.lhs << " != " << v.rhs << "\n";
    }
  } else if (o.suite == "oracle") {
    const auto r = verify_engines(base, o.max_given ? o.max : 20000);
    checked = r.checked;
    violations = r.mismatches.size();
    if (!r.mismatches.empty()) {
      std::cerr << "engines disagree at: " << list_head(r.mismatches) << "\n";
    }
  } else if (o.suite == "embedding") {
    const auto r = verify_embedding(base, o.max_given ? o.max : 32767);
    checked = r.checked;
    violations = r.mismatches.size();
    if (!r.mismatches.empty()) {
      std::cerr << "embedding fails at: " << list_head(r.mismatches) << "\n";
    }
  } else {
    throw std::invalid_argument("unknown suite '" + o.suite + "'");
  }
  std::cout << "suite " << o.suite << "\n"
            << "base " << o.base << "\n"
            << "checked " << checked << "\n"
            << "violations " << violations << "\n"
            << extra;
  return violations == 0 ? 0 : 1;
}

struct ConstantOpts {
  std::int64_t base = 2;
  int digits = 30;
};

int run_constant(const ConstantOpts& o) {
  std::cout << maximal_order_constant_digits(Base(o.base), o.digits) << "\n";
  return 0;
}

struct ScanOpts {
  std::int64_t base = 2;
  std::uint64_t max = 1000;
  std::string out;
};

int run_scan(const ScanOpts& o) {
  const Base base(o.base);
  const std::vector<Int> table = stern_range(base, o.max);
  Envelope env(base);
  Sink sink(o.out);
  std::ostream& os = sink.stream();
  os << "m,s,h_num,h_den,ratio_to_bound\n";
  for (std::uint64_t m = 1; m <= o.max; ++m) {
    const Rational hm = env.h(Rational(m));
    const Real ratio = Real(table[m]) / maximal_order(base, Real(m));
    os << m << "," << table[m] << ","
       << boost::multiprecision::numerator(hm) << ","
       << boost::multiprecision::denominator(hm) << "," << ratio.str(17)
       << "\n";
  }
  const NormalizedScan result = scan_normalized_max(base, o.max);
  os << "summary," << result.argmax << "," << result.max_ratio.str(17)
     << ",,\n";
  if (!result.over_unity.empty()) {
    std::cerr << result.over_unity.size()
              << " positions exceed the continuous bound; first: "
              << result.over_unity.front() << "\n";
    return 1;
  }
  return 0;
}

struct EvalRepOpts {
  std::string file;
  std::string n;
  std::string expect;
};

int run_eval_rep(const EvalRepOpts& o) {
  std::ifstream in(o.file);
  if (!in) {
    throw std::runtime_error("cannot open rep file '" + o.file + "'");
  }
  const LinearRep rep = read_linear_rep(in);
  const Int n = parse_nonnegative(o.n);
  const Int value = evaluate_at(rep, n);
  std::cout << value << "\n";
  if (!o.expect.empty()) {
    const Int expected(parse_nonnegative(o.expect));
    if (value != expected) {
      std::cerr << "mismatch: evaluated " << value << ", expected "
                << expected << "\n";
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact hyper-expansion counts, records, and growth bounds"};
  app.require_subcommand(1);

  ComputeOpts compute_o;
  CLI::App* compute = app.add_subcommand(
      "compute", "sequence value at one position, cross-checked by default");
  compute->add_option("--base", compute_o.base, "numeration base")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}));
  compute->add_option("n", compute_o.n, "position (nonnegative integer)")
      ->required();
  compute
      ->add_option("--method", compute_o.method,
                   "evaluation engine: recurrence, matrix, oracle, or cross")
      ->check(CLI::IsMember({"recurrence", "matrix", "oracle", "cross"}));

  EnumerateOpts enum_o;
  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "list hyper-expansions of n, least significant first");
  enumerate->add_option("--base", enum_o.base, "numeration base")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}));
  enumerate->add_option("n", enum_o.n, "value to expand")->required();
  enumerate->add_option("--cap", enum_o.cap, "maximum expansions to list");

  RecordsOpts records_o;
  CLI::App* records = app.add_subcommand(
      "records", "CSV of records and their approach to the growth bound");
  records->add_option("--base", records_o.base, "numeration base")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}));
  records->add_option("--kmax", records_o.kmax, "largest record index")
      ->check(CLI::Range(2, 100000));
  records->add_option("--max", records_o.scan_limit,
                      "exhaustive-scan ceiling for record intervals");
  records->add_option("--out", records_o.out, "write CSV to this file");

  VerifyOpts verify_o;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--base", verify_o.base, "numeration base")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}));
  CLI::Option* suite_opt =
      verify
          ->add_option("--suite", verify_o.suite,
                       "envelope, strengthening, h-recurrence, identities, "
                       "oracle, or embedding")
          ->required()
          ->check(CLI::IsMember({"envelope", "strengthening", "h-recurrence",
                                 "identities", "oracle", "embedding"}));
  (void)suite_opt;
  CLI::Option* max_opt =
      verify->add_option("--max", verify_o.max, "range limit for the suite");
  verify->add_option("--trials", verify_o.trials,
                     "sample count for h-recurrence")
      ->check(CLI::Range(0, 100000000));
  verify->add_option("--seed", verify_o.seed, "sampler seed");

  ConstantOpts constant_o;
  CLI::App* constant = app.add_subcommand(
      "constant", "normalized growth constant of the record values");
  constant->add_option("--base", constant_o.base, "numeration base")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}));
  constant->add_option("--digits", constant_o.digits, "significant digits")
      ->check(CLI::Range(1, 50));

  ScanOpts scan_o;
  CLI::App* scan = app.add_subcommand(
      "scan", "CSV of values against envelope and growth bound");
  scan->add_option("--base", scan_o.base, "numeration base")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}));
  scan->add_option("--max", scan_o.max, "scan 1..max")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 23));
  scan->add_option("--out", scan_o.out, "write CSV to this file");

  EvalRepOpts eval_o;
  CLI::App* eval_rep = app.add_subcommand(
      "eval-rep", "evaluate a linear representation from a file");
  eval_rep->add_option("--file", eval_o.file, "representation file")
      ->required();
  eval_rep->add_option("n", eval_o.n, "position to evaluate")->required();
  eval_rep->add_option("--expect", eval_o.expect,
                       "fail (exit 1) unless the value equals this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  verify_o.max_given = max_opt->count() > 0;

  try {
    if (compute->parsed()) return run_compute(compute_o);
    if (enumerate->parsed()) return run_enumerate(enum_o);
    if (records->parsed()) return run_records(records_o);
    if (verify->parsed()) return run_verify(verify_o);
    if (constant->parsed()) return run_constant(constant_o);
    if (scan->parsed()) return run_scan(scan_o);
    if (eval_rep->parsed()) return run_eval_rep(eval_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
