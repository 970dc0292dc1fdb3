#pragma once

#include <optional>
#include <string>

#include "bkv/forms.hpp"
#include "bkv/shimura.hpp"

namespace bkv {

// Text coefficient files. First line:
//   #bkv1 weight2=<int> level=<int> chardisc=<int> prec=<int> label=<text>
// lift files append ` t=<int> at=<int>`; the weight2/level/chardisc fields
// of a lift file describe the half-integral source, which is exactly the
// data a LiftRecord carries. Then one line `n<TAB><decimal integer>` for
// each 0 <= n < prec, in order, no omissions. Round-trips are bit-exact.

void write_form(const std::string& path, const FormRecord& f);
FormRecord read_form(const std::string& path);

void write_lift(const std::string& path, const LiftRecord& L);
LiftRecord read_lift(const std::string& path);

// True if the file's header carries the lift fields.
bool is_lift_file(const std::string& path);

// Writes via a temp file in the same directory followed by rename.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

}  // namespace bkv
