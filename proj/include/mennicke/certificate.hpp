#pragma once

#include <json.hpp>

#include "mennicke/mn.hpp"
#include "mennicke/umod.hpp"

namespace mennicke {

using Json = nlohmann::json;

inline constexpr int kCertificateVersion = 1;

/// [{"side": "L"|"R", "i": 1-based, "j": 1-based, "lambda": element}]
Json transcript_to_json(const Ring& ring, const Transcript& t);
Transcript transcript_from_json(const Ring& ring, const Json& j);

/// {"ring": descriptor, "m": rows, "n": cols, "entries": [[element, ...], ...]}
Json matrix_to_json(const Ring& ring, const ElementMatrix& A);
/// Accepts the object form above or a bare array of rows. Entries may be
/// strings or integers.
ElementMatrix matrix_from_json(const Ring& ring, const Json& j);
Json entries_to_json(const Ring& ring, const ElementMatrix& A);
ElementMatrix entries_from_json(const Ring& ring, const Json& rows);

Json row_certificate(const UnimodularRow& v, const UnimodularRow& w, const RowNormalization& result);
Json matrix_certificate(const RightInvertibleMatrix& S, const RightInvertibleMatrix& T,
                        const PairNormalization& result);

/// Replays both transcripts of a certificate and compares with its result
/// block. Schema problems raise MalformedInput; a replay mismatch is a
/// failed report.
VerificationReport verify_certificate_json(const Json& cert);

}  // namespace mennicke
