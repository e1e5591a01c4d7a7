#pragma once

#include "sets.hpp"
#include "symmetrize.hpp"

#include <memory>
#include <string>

namespace sphsym
{
/// Profile document:
/// {"n": 2, "grid": {"r_min": 1, "r_max": 3, "count": 65},
///  "alpha": {"ac_samples": [...] | "constant": a,
///            "jumps": [{"r": 2, "left": 1.0, "right": 0.5}],
///            "cantor": {"kind": "ternary_staircase", "support": [a, b], "scale": s, "depth": 8}}}
std::shared_ptr<const Profile> profile_from_json(const std::string& text);
std::string profile_to_json(const Profile& p);

/// Set-spec document: {"profile": <profile>, "direction": <direction>}.
/// Direction kinds: "constant" {direction}, "rotation" {breaks, angles},
/// "cantor_flow" {support, lambda}, "fourier_random" {seed, amplitude, modes},
/// "pieces" {pieces: [{from, to, transform, source}]}. Output always uses "pieces".
CapFieldSet set_from_json(const std::string& text);
std::string set_to_json(const CapFieldSet& e);

std::string circular_profile_to_json(const CircularProfile& c);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);
}
