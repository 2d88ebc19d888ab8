#pragma once

#include <string>

#include "randbound/spaces.hpp"

namespace randbound {

/// A named operator family as read from the JSON interchange format:
/// {"name": ..., "domain": {"dim", "p"}, "codomain": {...},
///  "members": [[[row], [row], ...], ...]} with p a number or "inf".
struct NamedFamily {
    std::string name;
    OperatorFamily family;
};

NamedFamily parse_family_json(const std::string& text);
NamedFamily load_family_file(const std::string& path);
std::string family_to_json(const NamedFamily& nf, int indent = 2);

} // namespace randbound
