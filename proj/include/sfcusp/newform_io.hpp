#pragma once

#include <string>
#include <vector>

#include "sfcusp/modforms.hpp"

namespace sfcusp {
namespace newform_io {

using modforms::NewformRecord;

inline constexpr const char* kFormatMagic = "sfnf";
inline constexpr int kFormatVersion = 1;

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Check the newform invariants: lambda(1) = 1, multiplicativity on coprime
// pairs, the Hecke relation lambda(p^2) = lambda(p)^2 - chi(p) at good
// primes, and the Deligne bound at good primes.  tolerance is relative.
ValidationReport validate(const NewformRecord& record, double tolerance = 1e-8);

// Parse a newform file; every record is validated before being returned.
// Throws MalformedFile (with line information) or InconsistentData (naming
// the violated invariant).
std::vector<NewformRecord> load_newforms(const std::string& path, double tolerance = 1e-8);

// Write records in the current format version.  Deterministic: fixed field
// order, floats at 17 significant digits.  Exact integral coefficients are
// stored as integers when a record carries them in full.
void save_newforms(const std::vector<NewformRecord>& records, const std::string& path);

// serialization to/from strings (the file operations wrap these)
std::string serialize(const std::vector<NewformRecord>& records);
std::vector<NewformRecord> parse(const std::string& text, double tolerance = 1e-8);

// conventional repository path, data/newforms/N{level}k{weight}_{index}.nf
std::string conventional_path(uint64_t level, int weight, int index);

} // namespace newform_io
} // namespace sfcusp
