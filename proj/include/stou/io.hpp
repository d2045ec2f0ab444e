#pragma once

#include <iosfwd>
#include <string>

#include "stou/core.hpp"
#include "stou/predict.hpp"

namespace stou {

/// Long-format CSV with header exactly `x,t,value`, one row per masked-valid
/// point, every number printed with 17 significant digits so doubles
/// round-trip bit-exactly.
void write_field_csv(const FieldData& field, std::ostream& out);
void write_field_csv(const FieldData& field, const std::string& path);

/// Reconstructs the lattice from the sorted unique coordinates, validating
/// uniform spacing to relative tolerance 1e-9; absent lattice points get
/// mask = false. Throws ParseError (with the offending line number) or
/// NonUniformGrid.
FieldData read_field_csv(std::istream& in);
FieldData read_field_csv(const std::string& path);

/// Reads the same x,t,value layout as an irregular site list (no lattice
/// reconstruction); used by the prediction command.
SiteList read_sites_csv(std::istream& in);
SiteList read_sites_csv(const std::string& path);

/// Formats a double with 17 significant digits (%.17g).
std::string format_g17(double v);

}  // namespace stou
