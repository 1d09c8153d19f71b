#pragma once

#include "ptasynth/property.hpp"
#include "ptasynth/pta.hpp"

#include <string>

namespace ptasynth {

/// Reads the line-oriented model format:
///
///   clocks: x, y
///   params: p
///   domain: time=dense param=real
///   loc q0 init inv: x <= p
///   edge q0 -> q1 : x >= 2 & x <= p ; a ; reset x:=0
///
/// Relations >, >= and = are rewritten into the <, <= normal form.
Pta parse_model(const std::string& text);

/// "EF phi" or "AG phi" over the locations, clocks and parameters of `pta`.
SystemProperty parse_property(const std::string& text, const Pta& pta);

/// A parameter expression such as "2p+3", "p^2-1" or "p*q".
Expression parse_expression(const std::string& text, const Pta& pta);

/// Pretty-prints `pta` so that parse_model(render_model(pta)) == pta.
std::string render_model(const Pta& pta);

std::string read_file(const std::string& path);

}  // namespace ptasynth
