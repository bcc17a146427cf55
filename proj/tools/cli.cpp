// Copyright 2026 The hyperlinear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <locale>
#include <sstream>

#include "CLI11.hpp"

#include "hyperlinear/amplify.hpp"
#include "hyperlinear/approx_rep.hpp"
#include "hyperlinear/io.hpp"
#include "hyperlinear/sphere_measure.hpp"

namespace hyperlinear::cli {

namespace {

constexpr std::uint64_t kMatrixStream = 1ULL << 61;

struct Global {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t trials = 20000;
  std::string out;
  bool no_timestamp = false;
  std::size_t max_dim = kDefaultMaxDim;
  bool strict_dim = false;

  RngSpec rng() const { return {seed, stream}; }
};

struct WordSource {
  std::string file;
  std::vector<std::string> inline_words;
  bool all_table_elements = false;

  std::vector<Word> load(const GroupSpec& group) const {
    std::vector<Word> E;
    if (all_table_elements) {
      const std::vector<Word> all = group.all_elements();
      E.insert(E.end(), all.begin(), all.end());
    }
    if (!file.empty()) {
      const std::vector<Word> from_file = read_word_file(file);
      E.insert(E.end(), from_file.begin(), from_file.end());
    }
    for (const std::string& w : inline_words) E.push_back(Word::parse(w));
    if (E.empty()) {
      throw Error(ErrorCode::EmptyE, "give --words, --word or --all-table-elements");
    }
    return E;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--words", file, "Word file: one word per line, signed generator indices")
        ->check(CLI::ExistingFile);
    cmd->add_option("--word", inline_words, "A word such as \"1 -2\" (repeatable)");
    cmd->add_flag("--all-table-elements", all_table_elements,
                  "Use every element of a table group");
  }
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void emit(const std::string& text, const Global& g, std::ostream& out) {
  if (g.out.empty()) {
    out << text;
  } else {
    write_text_file(g.out, text);
  }
}

void emit_json(Json j, const Global& g, std::ostream& out) {
  j["rng"] = {{"seed", g.seed}, {"stream", g.stream}};
  if (!g.no_timestamp) j["timestamp"] = utc_timestamp();
  emit(j.dump(2) + "\n", g, out);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(12) << v;
  return s.str();
}

int cmd_certify(const Global& g, const std::string& rep_path, const WordSource& words, double eps,
                const std::string& mode_name, std::size_t max_tries, std::ostream& out) {
  const ApproxRep rep = read_rep_bundle(rep_path);
  const std::vector<Word> E = words.load(rep.group());
  MonteCarloConfig mc;
  mc.trials = g.trials;
  mc.max_tries = max_tries;
  mc.strict_dim = g.strict_dim;
  mc.max_dim = g.max_dim;
  const Certificate cert = certify(rep, E, eps, parse_cert_mode(mode_name), mc, g.rng());

  out << "certify  mode " << to_string(cert.mode) << "  dim " << cert.dim << "  eps "
      << fmt(cert.eps) << "  |E| " << E.size() << "\n";
  out << "  max pair defect      " << fmt(cert.max_pair_defect()) << "  ("
      << cert.pair_defects.size() << " pairs)\n";
  out << "  max obstruction      " << fmt(cert.max_obstruction()) << "  ("
      << cert.obstructions.size() << " elements)\n";
  out << "  dim >= 1/eps         " << (cert.dim_bound_met ? "yes" : "no")
      << (cert.strict_dim ? "  (enforced)" : "") << "\n";
  if (cert.mode == CertMode::Onb) {
    out << "  tries used           " << cert.tries_used << "\n";
    out << "  dim * nu(complement) " << fmt(cert.complement_mass) << "\n";
  }
  if (cert.word_level) out << "  note: presentation group, words evaluated as written\n";
  out << "  result               " << (cert.pass ? "PASS" : "FAIL") << "\n";

  emit_json(certificate_to_json(cert), g, out);
  return cert.pass ? kPass : kCertificationFailed;
}

int cmd_amplify(const Global& g, const std::string& rep_path, const WordSource& words, double eps,
                std::ostream& out) {
  const ApproxRep rep = read_rep_bundle(rep_path);
  const std::vector<Word> E = words.load(rep.group());
  const AmplificationResult result = amplify_to_tolerance(rep, E, eps);
  out << "amplify  eps " << fmt(eps) << "\n";
  out << "  doubled        " << (result.lazy.doubled() ? "yes" : "no") << "\n";
  out << "  gamma          " << fmt(result.plan.gamma) << "\n";
  out << "  n=" << result.plan.n << "\n";
  out << "  delta          " << fmt(result.plan.delta) << "\n";
  out << "  dim=" << result.lazy.effective_dim().str() << "\n";
  for (const ElementTau& t : result.per_element) {
    out << "  |tau(" << E[t.g].to_string() << ")|  " << fmt(t.tau_modulus) << "\n";
  }
  out << "  defect bound   " << fmt(result.defect_bound) << "\n";
  out << "  result         " << (result.certificate.pass ? "PASS" : "FAIL") << "\n";
  emit_json(amplification_to_json(result), g, out);
  return result.certificate.pass ? kPass : kCertificationFailed;
}

int cmd_concentrate(const Global& g, const std::vector<long long>& dims,
                    const std::vector<double>& epss, const std::string& function_id,
                    const std::string& matrix_path, bool haar, std::ostream& out) {
  std::optional<ComplexMatrix> fixed;
  if (!matrix_path.empty()) fixed = matrix_from_json(read_json_file(matrix_path));
  const Rng matrix_stream = Rng(g.rng()).substream(kMatrixStream);

  std::ostringstream csv;
  csv.imbue(std::locale::classic());
  csv << std::setprecision(17);
  csv << "dim,eps,lipschitz,trials,empirical_tail,bound,function_id,seed\n";
  bool all_ok = true;
  for (long long dim : dims) {
    if (dim < 1) throw Error(ErrorCode::BadParams, "dims must be positive");
    ComplexMatrix a;
    if (fixed) {
      a = *fixed;
    } else if (haar) {
      Rng rng = matrix_stream.substream(static_cast<std::uint64_t>(dim));
      a = haar_unitary(dim, rng).matrix();
    }
    const TestFunction f = TestFunction::from_id(function_id, a);
    for (double eps : epss) {
      const ConcentrationReport r = concentration_check(f, dim, eps, g.trials, g.rng());
      all_ok = all_ok && r.within_bound();
      csv << r.dim << ',' << r.eps << ',' << r.lipschitz << ',' << r.trials << ','
          << r.empirical_tail << ',' << r.theoretical_bound << ',' << r.function_id << ','
          << g.seed << '\n';
    }
  }
  emit(csv.str(), g, out);
  return all_ok ? kPass : kCertificationFailed;
}

ComplexMatrix builtin_unitary(const std::string& name, Eigen::Index dim, const Global& g) {
  if (dim < 1) throw Error(ErrorCode::BadParams, "--dim must be positive");
  if (name == "identity") return ComplexMatrix::Identity(dim, dim);
  if (name == "cyclic_shift") {
    ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) s((j + 1) % dim, j) = 1.0;
    return s;
  }
  if (name == "haar") {
    Rng rng = Rng(g.rng()).substream(kMatrixStream);
    return haar_unitary(dim, rng).matrix();
  }
  throw Error(ErrorCode::UnknownFixture, "unknown built-in unitary '" + name + "'");
}

int cmd_onb(const Global& g, const std::string& rep_path, int generator,
            const std::string& unitary_name, long long dim, double eps, std::size_t max_tries,
            std::ostream& out, std::ostream& err) {
  ComplexMatrix u;
  std::string source;
  if (!rep_path.empty()) {
    const ApproxRep rep = read_rep_bundle(rep_path);
    u = rep.element_image(Word::generator(generator)).matrix();
    source = rep_path + "#" + std::to_string(generator);
  } else {
    u = builtin_unitary(unitary_name, dim, g);
    source = unitary_name;
  }
  const UnitaryMatrix checked(u);
  const Eigen::Index d = checked.dim();
  const VectorPredicate pred = [&](const ComplexVector& x) {
    return std::abs(x.dot(checked.matrix() * x)) <= eps;
  };
  const OnbSearch search = onb_search(pred, d, g.rng(), max_tries);

  Json j{{"tool", {{"name", "hyperlinear"}, {"version", HYPERLINEAR_VERSION}}},
         {"command", "onb"},
         {"unitary", source},
         {"dim", d},
         {"eps", eps},
         {"max_tries", max_tries},
         {"tries_used", search.tries_used},
         {"pass_rates", search.pass_rates}};
  if (search.basis) {
    const ComplexMatrix& xs = *search.basis;
    const ComplexMatrix ux = checked.matrix() * xs;
    std::vector<double> values;
    for (Eigen::Index c = 0; c < d; ++c) values.push_back(std::abs(xs.col(c).dot(ux.col(c))));
    j["basis"] = matrix_to_json(xs);
    j["column_values"] = values;
    out << "onb  dim " << d << "  eps " << fmt(eps) << "  found after " << search.tries_used
        << " tries, max |<x,ux>| " << fmt(*std::max_element(values.begin(), values.end()))
        << "\n";
  } else {
    j["basis"] = nullptr;
    err << "Exhausted: no basis after " << max_tries << " tries; column pass rates:";
    for (double r : search.pass_rates) err << ' ' << fmt(r);
    err << "\n";
  }
  emit_json(std::move(j), g, out);
  return search.basis ? kPass : kExhausted;
}

int cmd_zoo(const Global& g, const std::string& name, ZooParams params, std::ostream& out) {
  params.seed = g.seed;
  const ApproxRep rep = zoo(name, params);
  emit(rep_to_json(rep).dump(2) + "\n", g, out);
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate unitary representations: certificates, concentration, amplification",
               "hyperlinear"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", HYPERLINEAR_VERSION);

  Global g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--stream", g.stream, "RNG stream");
  app.add_option("--trials", g.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file (default: standard output)");
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp field");
  app.add_option("--max-dim", g.max_dim, "Largest dimension to materialize")
      ->check(CLI::PositiveNumber);
  app.add_flag("--strict-dim", g.strict_dim, "Fail certificates with dim < 1/eps");

  std::string rep_path;
  WordSource words;
  double eps = 0.0;
  std::string mode = "hs";
  std::size_t max_tries = 10;

  CLI::App* certify_cmd = app.add_subcommand("certify", "Certify a rep bundle on a word set");
  certify_cmd->add_option("--rep", rep_path, "Rep bundle JSON")->required();
  words.attach(certify_cmd);
  certify_cmd->add_option("--eps", eps, "Tolerance")->required()->check(CLI::PositiveNumber);
  certify_cmd->add_option("--mode", mode, "hs, sphere or onb")
      ->check(CLI::IsMember({"hs", "sphere", "onb"}));
  certify_cmd->add_option("--max-tries", max_tries, "Haar rotations tried in onb mode")
      ->check(CLI::PositiveNumber);

  CLI::App* amplify_cmd = app.add_subcommand("amplify", "Double and tensor a rep down to eps");
  amplify_cmd->add_option("--rep", rep_path, "Rep bundle JSON")->required();
  words.attach(amplify_cmd);
  amplify_cmd->add_option("--eps", eps, "Target tolerance in (0, 1]")
      ->required()
      ->check(CLI::Range(0.0, 1.0));

  std::vector<long long> dims;
  std::vector<double> eps_list;
  std::string function_id = "re_coord";
  std::string matrix_path;
  bool haar = false;
  CLI::App* conc_cmd = app.add_subcommand("concentrate", "Empirical concentration tails as CSV");
  conc_cmd->add_option("--dims", dims, "Sphere dimensions")->required()->delimiter(',');
  conc_cmd->add_option("--eps", eps_list, "Deviation thresholds")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  conc_cmd->add_option("--function", function_id,
                       "re_coord, dist_to_vector, quad_form or abs_quad_form");
  conc_cmd->add_option("--matrix", matrix_path, "Matrix JSON for the quadratic forms")
      ->check(CLI::ExistingFile);
  conc_cmd->add_flag("--haar", haar, "Use a seeded Haar unitary of each dim for quadratic forms");

  int generator = 1;
  std::string unitary_name = "cyclic_shift";
  long long dim = 0;
  CLI::App* onb_cmd = app.add_subcommand("onb", "Find an ONB with |<x,ux>| <= eps");
  onb_cmd->add_option("--rep", rep_path, "Rep bundle JSON; uses the image of --generator");
  onb_cmd->add_option("--generator", generator, "1-based generator index")
      ->check(CLI::PositiveNumber);
  onb_cmd->add_option("--unitary", unitary_name, "cyclic_shift, identity or haar");
  onb_cmd->add_option("--dim", dim, "Dimension of the built-in unitary");
  onb_cmd->add_option("--eps", eps, "Threshold")->required()->check(CLI::NonNegativeNumber);
  onb_cmd->add_option("--max-tries", max_tries, "Haar rotations to try")
      ->check(CLI::PositiveNumber);

  std::string fixture;
  ZooParams zp;
  CLI::App* zoo_cmd = app.add_subcommand("zoo", "Write a fixture rep bundle");
  zoo_cmd->add_option("--name", fixture,
                      "regular_finite, cyclic_character, free_haar, integer_phase or perturbed")
      ->required();
  zoo_cmd->add_option("--group", zp.group, "Z<n>, D<n> or S<n>");
  zoo_cmd->add_option("--n", zp.n, "Order for cyclic_character");
  zoo_cmd->add_option("--k", zp.k, "Character index for cyclic_character");
  zoo_cmd->add_option("--rank", zp.rank, "Free group rank");
  zoo_cmd->add_option("--dim", zp.dim, "Dimension for free_haar");
  zoo_cmd->add_option("--theta", zp.theta, "Angle for integer_phase");
  zoo_cmd->add_option("--delta", zp.delta, "Perturbation size");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    if (certify_cmd->parsed()) return cmd_certify(g, rep_path, words, eps, mode, max_tries, out);
    if (amplify_cmd->parsed()) return cmd_amplify(g, rep_path, words, eps, out);
    if (conc_cmd->parsed()) {
      return cmd_concentrate(g, dims, eps_list, function_id, matrix_path, haar, out);
    }
    if (onb_cmd->parsed()) {
      return cmd_onb(g, rep_path, generator, unitary_name, dim, eps, max_tries, out, err);
    }
    if (zoo_cmd->parsed()) return cmd_zoo(g, fixture, zp, out);
  } catch (const ExhaustedError& e) {
    err << e.what() << "\n";
    return kExhausted;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::GammaOutOfRange: return kGammaOutOfRange;
      case ErrorCode::DefectBudgetExceeded: return kDefectBudgetExceeded;
      case ErrorCode::Exhausted: return kExhausted;
      default: return kConfigError;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace hyperlinear::cli
