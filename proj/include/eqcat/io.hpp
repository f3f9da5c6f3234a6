#pragma once

// Canonical JSON encoding of every object the command line reads or writes.
// Keys are sorted and element order is the in-memory order, so a decode
// followed by an encode reproduces the input bytes.

#include <string>

#include "json.hpp"

#include "eqcat/bisimp.hpp"
#include "eqcat/equivariant.hpp"
#include "eqcat/fingroup.hpp"
#include "eqcat/homology.hpp"
#include "eqcat/scat.hpp"
#include "eqcat/simpset.hpp"

namespace eqcat::io {

using Json = nlohmann::json;

/// Two-space indentation and a trailing newline.
std::string canonical(const Json& j);
/// Parses text; syntax errors become InvalidInput with the byte position.
Json parse(const std::string& text);
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

/// The "kind" field of an encoded object.
std::string kind_of(const Json& j);

Json encode(const TruncSSet& x);
Json encode(const TruncBiSSet& x);
Json encode(const FiniteCategory& c);
Json encode(const FiniteGroup& g);
Json encode(const SCategory& c);
Json encode(const OrbitCategory& o);
Json encode(const GObject<TruncSSet>& x);
Json encode(const HomologyResult& h);
Json encode(const CheckReport& r, const FiniteGroup& g);

TruncSSet decode_sset(const Json& j);
TruncBiSSet decode_bisset(const Json& j);
FiniteCategory decode_category(const Json& j);
FiniteGroup decode_group(const Json& j);
SCategory decode_scategory(const Json& j);
GObject<TruncSSet> decode_gobject(const Json& j);

/// "Z/n", "Zn", "S3", "D4", "trivial", or an encoded group.
FiniteGroup group_from_ref(const Json& j);

}  // namespace eqcat::io
