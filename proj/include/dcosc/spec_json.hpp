#pragma once

// JSON serialization of recurrence specs:
//   {alpha, beta, toll: {terms: [...], override: {...}}, initial: {...}, n0}
// Rationals travel as "p/q" strings; round trips are bit-exact.

#include <string>

#include "dcosc/recurrence.hpp"

namespace dcosc {

std::string spec_to_json(const RecurrenceSpec& spec, int indent = -1);
RecurrenceSpec spec_from_json(const std::string& text);

std::string toll_to_json(const TollFunction& toll, int indent = -1);
TollFunction toll_from_json(const std::string& text);

}  // namespace dcosc
