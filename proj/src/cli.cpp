#include "mennicke/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "mennicke/certificate.hpp"
#include "mennicke/error.hpp"
#include "mennicke/mn.hpp"
#include "mennicke/symbols.hpp"

namespace mennicke::cli {

namespace {

struct VerificationFailed {
  Json body;
};

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

std::vector<std::string> split_row(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<Element> parse_row(const Ring& ring, const std::string& text) {
  std::vector<Element> out;
  for (const auto& p : split_row(text)) out.push_back(ring.parse_element(p));
  return out;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed("invalid JSON in " + origin + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

/// Inline JSON when the value starts with '{' or '[', otherwise a file path.
Json inline_or_file(const std::string& value) {
  const auto pos = value.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && (value[pos] == '{' || value[pos] == '['))
    return parse_json_text(value, "inline argument");
  return read_json_file(value);
}

Json int_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json int_matrix_json(const IntMatrix& A) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < A.cols(); ++j) r.push_back(int_json(A(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

IntMatrix int_matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() && j.contains("entries") ? j.at("entries") : j;
  if (!rows.is_array() || rows.empty()) malformed("matrix must be a non-empty array of rows");
  std::size_t cols = 0;
  std::vector<Integer> data;
  for (const auto& r : rows) {
    if (!r.is_array() || r.empty() || (cols && r.size() != cols)) malformed("matrix rows must share a length");
    cols = r.size();
    for (const auto& e : r) {
      std::string s = e.is_string() ? e.get<std::string>() : e.dump();
      Integer v;
      if (v.set_str(s, 10) != 0) malformed("'" + s + "' is not an integer");
      data.push_back(v);
    }
  }
  return IntMatrix(rows.size(), cols, std::move(data));
}

std::string json_string(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

struct Output {
  std::string path;
  std::ostream& fallback;

  void write(const Json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
      fallback << text;
      return;
    }
    std::ofstream f(path);
    if (!f) malformed("cannot write '" + path + "'");
    f << text;
  }
};

std::vector<RelationKind> parse_kinds(const std::string& list) {
  std::vector<RelationKind> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_relation_kind(item));
  if (out.empty()) malformed("--relations names no relation");
  return out;
}

Json violation_json(const Labeling& L, const Violation& v) {
  Json params = Json::array();
  for (const auto& p : v.instance.params) params.push_back(L.ring.format(p));
  Json tail = Json::array();
  for (const auto& t : L.tails[v.instance.tail_index]) tail.push_back(L.ring.format(t));
  Json vec = Json::array();
  for (const auto& x : v.instance.vector) vec.push_back(int_json(x));
  return {{"relation", to_string(v.kind)}, {"params", params}, {"tail", tail}, {"vector", vec}};
}

Json tally_json(const ChainTally& t) {
  Json j{{"instances", t.instances}, {"failures", t.failures}};
  if (!t.first_failure.empty()) j["first_failure"] = t.first_failure;
  return j;
}

void error_json(std::ostream& err, std::string_view code, const std::string& message) {
  err << Json{{"error", {{"code", std::string(code)}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SubsetUnimodularizationExhausted: return kOracleExhausted;
    case ErrorCode::OracleFailure: return kVerificationFailed;
    default: return kMalformedInput;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mennicke-Newman normalizations with replayable certificates"};
  app.require_subcommand(1);
  std::string out_path;

  std::string ring_text, v_text, w_text, s_text, t_text, cert_path, relations = "ms2", matrix_text;
  std::optional<int> sdim;
  std::uint64_t seed = 0, cap = kDefaultCap;
  int retry_budget = 32;
  std::size_t m = 1, n = 2, steps = 10, samples = 0;

  auto* reduce_rows = app.add_subcommand("reduce-rows", "Normalize a pair of unimodular rows");
  reduce_rows->add_option("--ring", ring_text)->required();
  reduce_rows->add_option("--v", v_text, "comma-separated entries")->required();
  reduce_rows->add_option("--w", w_text, "comma-separated entries")->required();
  reduce_rows->add_option("--sdim", sdim, "bound used in place of the declared sdim");

  auto* reduce_matrices = app.add_subcommand("reduce-matrices", "Normalize a pair of right-invertible matrices");
  reduce_matrices->add_option("--ring", ring_text, "defaults to the ring named in --s");
  reduce_matrices->add_option("--s", s_text, "matrix JSON file or inline JSON")->required();
  reduce_matrices->add_option("--t", t_text, "matrix JSON file or inline JSON")->required();
  reduce_matrices->add_option("--seed", seed);
  reduce_matrices->add_option("--retry-budget", retry_budget)->check(CLI::NonNegativeNumber);
  reduce_matrices->add_option("--sdim", sdim, "bound used in place of the declared sdim");

  auto* verify = app.add_subcommand("verify", "Replay a certificate");
  verify->add_option("certificate", cert_path)->required();

  auto* orbits = app.add_subcommand("orbits", "Count right-invertible matrices and their E_n orbits");
  orbits->add_option("--ring", ring_text)->required();
  orbits->add_option("--m", m)->check(CLI::PositiveNumber);
  orbits->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  orbits->add_option("--cap", cap);

  auto* symbol_group = app.add_subcommand("symbol-group", "Universal symbol group of the orbit set");
  symbol_group->add_option("--ring", ring_text)->required();
  symbol_group->add_option("--n", n)->check(CLI::Range(2, 64));
  symbol_group->add_option("--relations", relations, "comma-separated, e.g. ms2,ms3");
  symbol_group->add_option("--samples", samples, "seeded sample size per relation; 0 takes all");
  symbol_group->add_option("--seed", seed);
  symbol_group->add_option("--cap", cap);

  auto* chains = app.add_subcommand("check-lemma31", "Check the MS3/MS5 equivalence");
  chains->add_option("--ring", ring_text)->required();
  chains->add_option("--n", n)->check(CLI::Range(2, 64));
  chains->add_option("--samples", samples, "instances per direction (default 1000)");
  chains->add_option("--seed", seed);
  chains->add_option("--cap", cap);

  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("--matrix", matrix_text, "JSON file or inline JSON array of rows")->required();

  auto* random = app.add_subcommand("random", "Seeded random right-invertible matrix");
  random->add_option("--ring", ring_text)->required();
  random->add_option("--m", m)->check(CLI::PositiveNumber);
  random->add_option("--n", n)->required();
  random->add_option("--seed", seed);
  random->add_option("--steps", steps);

  for (auto* sub : app.get_subcommands({}))
    sub->add_option("--out", out_path, "write the result here instead of stdout");

  std::vector<const char*> argv{"mennicke"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    error_json(err, "MalformedArguments", e.what());
    return kMalformedInput;
  }

  const Output sink{out_path, out};
  try {
    if (reduce_rows->parsed()) {
      const Ring ring = Ring::parse(ring_text);
      const auto v = new_unimodular_row(ring, parse_row(ring, v_text));
      const auto w = new_unimodular_row(ring, parse_row(ring, w_text));
      const auto result = mn_rows(v, w, sdim);
      sink.write(row_certificate(v, w, result));
    } else if (reduce_matrices->parsed()) {
      const Json sj = inline_or_file(s_text);
      const Json tj = inline_or_file(t_text);
      if (ring_text.empty()) {
        if (!sj.is_object() || !sj.contains("ring")) malformed("--ring is required when --s names no ring");
        ring_text = json_string(sj.at("ring"));
      }
      const Ring ring = Ring::parse(ring_text);
      const ElementMatrix SA = matrix_from_json(ring, sj);
      const ElementMatrix TA = matrix_from_json(ring, tj);
      const auto S = new_right_invertible(ring, SA.rows(), SA.cols(), SA);
      const auto T = new_right_invertible(ring, TA.rows(), TA.cols(), TA);
      MnConfig cfg;
      cfg.retry_budget = retry_budget;
      cfg.rng_seed = seed;
      cfg.sdim_override = sdim;
      const auto result = mn_matrices(S, T, cfg);
      sink.write(matrix_certificate(S, T, result));
    } else if (verify->parsed()) {
      const auto report = verify_certificate_json(read_json_file(cert_path));
      Json body{{"verified", report.passed}};
      if (!report.detail.empty()) body["detail"] = report.detail;
      if (report.mismatch) body["mismatch"] = {{"row", report.mismatch->first + 1}, {"col", report.mismatch->second + 1}};
      if (!report.passed) throw VerificationFailed{body};
      sink.write(body);
    } else if (orbits->parsed()) {
      const auto table = enumerate_orbits(Ring::parse(ring_text), m, n, cap);
      sink.write({{"rows", table.all_rows().size()}, {"orbits", table.orbit_count()}});
    } else if (symbol_group->parsed()) {
      const Ring ring = Ring::parse(ring_text);
      const auto kinds = parse_kinds(relations);
      const auto table = enumerate_orbits(ring, 1, n, cap);
      const Labeling L = orbit_labeling(table);
      HarvestOptions opts;
      opts.samples = samples;
      opts.seed = seed;
      const Presentation pres = make_presentation(L, kinds, opts);
      const auto group = universal_group(pres);
      Json factors = Json::array(), divisors = Json::array();
      for (const auto& d : group.invariant_factors) factors.push_back(int_json(d));
      for (const auto& d : group.elementary_divisors) divisors.push_back(int_json(d));
      sink.write({{"ring", ring.descriptor()},
                  {"n", n},
                  {"generators", pres.generators},
                  {"relations", pres.relations.size()},
                  {"invariant_factors", factors},
                  {"elementary_divisors", divisors}});
    } else if (chains->parsed()) {
      const Ring ring = Ring::parse(ring_text);
      const std::size_t count = samples == 0 ? 1000 : samples;
      const auto chains = sample_chains(ring, n - 1, count, seed);
      Json body{{"ring", ring.descriptor()},
                {"n", n},
                {"chains", {{"ms3_to_ms5", tally_json(chains.ms3_to_ms5)},
                            {"ms5_to_ms3", tally_json(chains.ms5_to_ms3)}}}};
      bool ok = chains.passed();
      if (ring.is_finite()) {
        const Labeling L = orbit_labeling(enumerate_orbits(ring, 1, n, cap));
        const auto rep = check_equivalence_ms3_ms5(L);
        Json violations = Json::array();
        for (const auto& v : rep.violations) violations.push_back(violation_json(L, v));
        body["lattice"] = {{"generators", L.generator_count},
                           {"ms5_in_ms3_ms4", rep.ms5_in_ms3_ms4},
                           {"ms3_in_ms5_ms4", rep.ms3_in_ms5_ms4},
                           {"violations", violations}};
        ok = ok && rep.passed();
      }
      body["passed"] = ok;
      if (!ok) throw VerificationFailed{body};
      sink.write(body);
    } else if (snf->parsed()) {
      const auto result = smith_normal_form(int_matrix_from_json(inline_or_file(matrix_text)));
      sink.write({{"U", int_matrix_json(result.U)}, {"D", int_matrix_json(result.D)}, {"V", int_matrix_json(result.V)}});
    } else if (random->parsed()) {
      const Ring ring = Ring::parse(ring_text);
      const auto inst = random_unimodular_instance(ring, m, n, seed, steps);
      Json j = matrix_to_json(ring, inst.matrix.entries());
      j["generator"] = transcript_to_json(ring, inst.generator);
      sink.write(j);
    }
  } catch (const VerificationFailed& f) {
    sink.write(f.body);
    error_json(err, "VerificationFailed", f.body.value("detail", std::string("check failed")));
    return kVerificationFailed;
  } catch (const Error& e) {
    error_json(err, to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const Json::exception& e) {
    error_json(err, "MalformedInput", e.what());
    return kMalformedInput;
  } catch (const std::exception& e) {
    error_json(err, "MalformedInput", e.what());
    return kMalformedInput;
  }
  return kSuccess;
}

}  // namespace mennicke::cli
