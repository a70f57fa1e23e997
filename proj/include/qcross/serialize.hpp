#pragma once

/// JSON documents.  Every exact number is a string ("p/r" for rationals,
/// decimal for integers, {"d","a","b"} for quadratic numbers); small
/// structural integers (q, n, k, l, i) are plain JSON integers.  Keys are
/// emitted in sorted order so identical inputs give identical bytes.

#include <json.hpp>

#include "qcross/certificate.hpp"
#include "qcross/exactnum.hpp"
#include "qcross/families.hpp"
#include "qcross/harmonic.hpp"
#include "qcross/report.hpp"
#include "qcross/spectrum.hpp"

namespace qcross {

using Json = nlohmann::json;

Json to_json(const QuadraticNumber& x);
QuadraticNumber quadratic_from_json(const Json& j);

Json to_json(const Parameters& p);
Json to_json(const Theta& t);
Json to_json(const Report& r);
Json to_json(const Family& f);
Family family_from_json(const Json& j);

Json to_json(const DualCertificate& cert);
/// Throws InvalidParameter on malformed documents.
DualCertificate certificate_from_json(const Json& j);

Json to_json(const SearchResult& r);
Json to_json(const SpectrumCrosscheck& c);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace qcross
