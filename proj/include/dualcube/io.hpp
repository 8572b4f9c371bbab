#pragma once

#include "dualcube/dualfn.hpp"
#include "dualcube/matching.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dualcube {

/// Raised for malformed input files.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Header line `p r t m l k n`, then one line `S | u | v | w | d` per subset.
void write_family(std::ostream& out, const MVFamily& family);
/// Rebuilds the family and checks every line against the canonical construction
/// and the structural invariants. Lines starting with '#' are skipped.
MVFamily read_family(std::istream& in);

/// One packed decimal per line.
void write_symbols(std::ostream& out, const std::vector<ExtElem>& symbols);
std::vector<ExtElem> read_symbols(std::istream& in, const ExtField& field);

/// One line per check: a as a bitstring, i, value components.
void write_certificate(std::ostream& out, const CubeCertificate& certificate);

std::string bitstring(const BitVec& a);

} // namespace dualcube
