#pragma once

#include <string>

#include "amzv/index.hpp"
#include "amzv/powersums.hpp"
#include "amzv/useries.hpp"

namespace amzv {

/// Field tower description: {"p", "e", "M", "modulus", "generator"}.
std::string field_metadata_json(const Field& F);

/// {"var":"u","q":...,"M":...,"valuation":v|null,"prec":P,"digits":[...]}
/// with digits listed from the valuation upward.  max_digits caps the array
/// (the window end is still recorded in "prec").
std::string useries_to_json(const USeries& x, size_t max_digits = size_t(-1));

/// Inverse of useries_to_json; validates q and M against the field instance.
USeries useries_from_json(const std::string& text, const FieldPtr& F);

/// {"index":{"s":[...],"eps":[...],"text":"..."},"value":{...},
///  "d_max_used":...,"tail_valuation_bound":...}
std::string zeta_value_to_json(const ZetaValue& z, uint32_t q, size_t max_digits = size_t(-1));

/// {"level":"zeta|sd|sless","terms":[{"coeff":c,"s":[...],"eps":[...]},...]}
/// in canonical term order.
std::string lincomb_to_json(const LinComb& c, uint32_t q);
LinComb lincomb_from_json(const std::string& text);

}  // namespace amzv
