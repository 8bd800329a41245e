#include "mennicke/certificate.hpp"

#include "mennicke/error.hpp"

namespace mennicke {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

Element element_from_json(const Ring& ring, const Json& j) {
  if (j.is_string()) return ring.parse_element(j.get<std::string>());
  if (j.is_number_integer()) return ring.parse_element(j.dump());
  malformed("element must be a string or an integer, got " + j.dump());
}

std::size_t index_from_json(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 1) malformed("op indices are positive integers");
  return static_cast<std::size_t>(j.get<long long>() - 1);
}

std::vector<Element> row_from_json(const Ring& ring, const Json& j) {
  if (!j.is_array()) malformed("row must be an array");
  std::vector<Element> out;
  for (const auto& e : j) out.push_back(element_from_json(ring, e));
  return out;
}

Json row_to_json(const Ring& ring, const std::vector<Element>& row) {
  Json out = Json::array();
  for (const auto& e : row) out.push_back(ring.format(e));
  return out;
}

}  // namespace

Json transcript_to_json(const Ring& ring, const Transcript& t) {
  Json out = Json::array();
  for (const auto& op : t)
    out.push_back({{"side", op.side == Side::Left ? "L" : "R"},
                   {"i", op.i + 1},
                   {"j", op.j + 1},
                   {"lambda", ring.format(op.lambda)}});
  return out;
}

Transcript transcript_from_json(const Ring& ring, const Json& j) {
  if (!j.is_array()) malformed("transcript must be an array");
  Transcript out;
  for (const auto& op : j) {
    const Json& side = field(op, "side");
    if (!side.is_string() || (side != "L" && side != "R")) malformed("op side must be \"L\" or \"R\"");
    out.push_back({side == "L" ? Side::Left : Side::Right, index_from_json(field(op, "i")),
                   index_from_json(field(op, "j")), element_from_json(ring, field(op, "lambda"))});
  }
  return out;
}

Json entries_to_json(const Ring& ring, const ElementMatrix& A) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < A.rows(); ++i) rows.push_back(row_to_json(ring, A.row(i)));
  return rows;
}

ElementMatrix entries_from_json(const Ring& ring, const Json& rows) {
  if (!rows.is_array() || rows.empty()) malformed("entries must be a non-empty array of rows");
  std::vector<Element> data;
  std::size_t cols = 0;
  for (const auto& r : rows) {
    auto row = row_from_json(ring, r);
    if (cols == 0) cols = row.size();
    if (row.empty() || row.size() != cols) malformed("matrix rows must have one common, non-zero length");
    data.insert(data.end(), row.begin(), row.end());
  }
  return ElementMatrix(rows.size(), cols, std::move(data));
}

Json matrix_to_json(const Ring& ring, const ElementMatrix& A) {
  return {{"ring", ring.descriptor()}, {"m", A.rows()}, {"n", A.cols()}, {"entries", entries_to_json(ring, A)}};
}

ElementMatrix matrix_from_json(const Ring& ring, const Json& j) {
  if (j.is_array()) return entries_from_json(ring, j);
  if (j.contains("ring") && Ring::parse(field(j, "ring").get<std::string>()) != ring)
    malformed("matrix ring " + j.at("ring").dump() + " differs from " + ring.descriptor());
  ElementMatrix A = entries_from_json(ring, field(j, "entries"));
  const Json& m = field(j, "m");
  const Json& n = field(j, "n");
  if (!m.is_number_integer() || !n.is_number_integer() || m.get<long long>() != static_cast<long long>(A.rows()) ||
      n.get<long long>() != static_cast<long long>(A.cols()))
    malformed("declared dimensions do not match the entries");
  return A;
}

Json row_certificate(const UnimodularRow& v, const UnimodularRow& w, const RowNormalization& result) {
  const Ring& ring = v.ring();
  return {{"version", kCertificateVersion},
          {"kind", "rows"},
          {"ring", ring.descriptor()},
          {"input", {{"v", row_to_json(ring, v.entries())}, {"w", row_to_json(ring, w.entries())}}},
          {"transcripts",
           {{"S", {{"left", Json::array()}, {"right", transcript_to_json(ring, result.eps)}}},
            {"T", {{"left", Json::array()}, {"right", transcript_to_json(ring, result.delta)}}}}},
          {"result", {{"x", ring.format(result.x)}, {"tail", row_to_json(ring, result.tail)}}}};
}

Json matrix_certificate(const RightInvertibleMatrix& S, const RightInvertibleMatrix& T,
                        const PairNormalization& result) {
  const Ring& ring = S.ring();
  return {{"version", kCertificateVersion},
          {"kind", "matrices"},
          {"ring", ring.descriptor()},
          {"input", {{"S", matrix_to_json(ring, S.entries())}, {"T", matrix_to_json(ring, T.entries())}}},
          {"transcripts",
           {{"S",
             {{"left", transcript_to_json(ring, result.left_s)}, {"right", transcript_to_json(ring, result.right_s)}}},
            {"T",
             {{"left", transcript_to_json(ring, result.left_t)},
              {"right", transcript_to_json(ring, result.right_t)}}}}},
          {"result", {{"X", entries_to_json(ring, result.X)}, {"alpha", entries_to_json(ring, result.alpha)}}}};
}

VerificationReport verify_certificate_json(const Json& cert) {
  if (!cert.is_object()) malformed("certificate must be a JSON object");
  const Json& version = field(cert, "version");
  if (!version.is_number_integer() || version.get<int>() != kCertificateVersion)
    malformed("unsupported certificate version " + version.dump());
  const Json& ring_j = field(cert, "ring");
  if (!ring_j.is_string()) malformed("ring must be a descriptor string");
  const Ring ring = Ring::parse(ring_j.get<std::string>());
  const Json& kind = field(cert, "kind");
  const Json& input = field(cert, "input");
  const Json& transcripts = field(cert, "transcripts");
  const Json& result = field(cert, "result");

  ElementMatrix S, T, claimed_s, claimed_t;
  if (kind == "rows") {
    const auto v = row_from_json(ring, field(input, "v"));
    const auto w = row_from_json(ring, field(input, "w"));
    const Element x = element_from_json(ring, field(result, "x"));
    const auto tail = row_from_json(ring, field(result, "tail"));
    std::vector<Element> cs{x}, ct{ring.sub(ring.one(), x)};
    cs.insert(cs.end(), tail.begin(), tail.end());
    ct.insert(ct.end(), tail.begin(), tail.end());
    S = row_matrix(v);
    T = row_matrix(w);
    claimed_s = row_matrix(cs);
    claimed_t = row_matrix(ct);
  } else if (kind == "matrices") {
    S = matrix_from_json(ring, field(input, "S"));
    T = matrix_from_json(ring, field(input, "T"));
    const ElementMatrix X = entries_from_json(ring, field(result, "X"));
    const ElementMatrix alpha = entries_from_json(ring, field(result, "alpha"));
    if (X.rows() != X.cols() || alpha.rows() != X.rows()) malformed("result blocks have inconsistent shapes");
    const std::size_t m = X.rows(), n = m + alpha.cols();
    claimed_s = ElementMatrix(m, n);
    claimed_t = ElementMatrix(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        claimed_s(i, j) = X(i, j);
        claimed_t(i, j) = ring.sub(i == j ? ring.one() : ring.zero(), X(i, j));
      }
      for (std::size_t j = m; j < n; ++j) claimed_s(i, j) = claimed_t(i, j) = alpha(i, j - m);
    }
  } else {
    malformed("kind must be \"rows\" or \"matrices\"");
  }

  const Json& ts = field(transcripts, "S");
  const Json& tt = field(transcripts, "T");
  const Transcript ls = transcript_from_json(ring, field(ts, "left"));
  const Transcript lt = transcript_from_json(ring, field(tt, "left"));
  if (kind == "rows" && (!ls.empty() || !lt.empty())) {
    VerificationReport report;
    report.detail = "row certificates carry no left ops";
    return report;
  }
  VerificationReport report =
      verify_certificate(ring, S, ls, transcript_from_json(ring, field(ts, "right")), claimed_s);
  if (!report.passed) {
    report.detail = "S: " + report.detail;
    return report;
  }
  report = verify_certificate(ring, T, lt, transcript_from_json(ring, field(tt, "right")), claimed_t);
  if (!report.passed) report.detail = "T: " + report.detail;
  return report;
}

}  // namespace mennicke
