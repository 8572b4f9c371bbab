#include "dualcube/io.hpp"

#include "dualcube/errors.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace dualcube {

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        return true;
    }
    return false;
}

template <typename Row>
void write_row(std::ostream& out, const Row& row) {
    for (Eigen::Index j = 0; j < row.size(); ++j) out << (j ? " " : "") << row(j);
}

std::vector<std::int64_t> parse_ints(const std::string& field, std::size_t lineno) {
    std::istringstream ss(field);
    std::vector<std::int64_t> out;
    std::int64_t v;
    while (ss >> v) out.push_back(v);
    if (!ss.eof()) throw ParseError("line " + std::to_string(lineno) + ": expected integers");
    return out;
}

} // namespace

void write_family(std::ostream& out, const MVFamily& fam) {
    const auto& prm = fam.params;
    out << "# p r t m l k n\n";
    out << prm.p << ' ' << prm.r << ' ' << prm.t << ' ' << prm.m << ' ' << prm.l << ' ' << prm.k << ' ' << prm.n << '\n';
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        for (std::size_t e = 0; e < fam.subsets[i].size(); ++e) out << (e ? " " : "") << fam.subsets[i][e];
        out << " | ";
        write_row(out, fam.u.row(row));
        out << " | ";
        write_row(out, fam.v.row(row));
        out << " | ";
        write_row(out, fam.w.row(row));
        out << " | ";
        write_row(out, fam.d.row(row));
        out << '\n';
    }
}

MVFamily read_family(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!next_content_line(in, line, lineno)) throw ParseError("family file has no header");
    std::istringstream hs(line);
    std::uint64_t p, t, m, l;
    std::uint32_t r;
    std::string k_str, n_str;
    if (!(hs >> p >> r >> t >> m >> l >> k_str >> n_str))
        throw ParseError("line " + std::to_string(lineno) + ": header must be `p r t m l k n`");
    MVParams params;
    try {
        params = derive_params(p, r, m);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("family header: ") + e.what());
    }
    if (params.t != t || params.l != l || params.k.str() != k_str || params.n.str() != n_str)
        throw ParseError("family header disagrees with the parameters derived from p, r, m");

    MVFamily fam = build_family(params);
    const auto k = fam.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (!next_content_line(in, line, lineno)) throw ParseError("family file ends after " + std::to_string(i) + " rows");
        std::vector<std::string> parts;
        std::istringstream ls(line);
        std::string part;
        while (std::getline(ls, part, '|')) parts.push_back(part);
        if (parts.size() != 5) throw ParseError("line " + std::to_string(lineno) + ": expected `S | u | v | w | d`");
        const auto row = static_cast<Eigen::Index>(i);
        const auto subset = parse_ints(parts[0], lineno);
        std::vector<std::uint64_t> s(subset.begin(), subset.end());
        auto load = [&](FpMat& mat, const std::string& text) {
            const auto vals = parse_ints(text, lineno);
            if (static_cast<Eigen::Index>(vals.size()) != mat.cols())
                throw ParseError("line " + std::to_string(lineno) + ": vector has the wrong length");
            FpMat loaded(1, mat.cols());
            for (Eigen::Index j = 0; j < mat.cols(); ++j) loaded(0, j) = vals[static_cast<std::size_t>(j)];
            if (loaded != mat.row(row))
                throw ParseError("line " + std::to_string(lineno) + ": row disagrees with the canonical construction");
        };
        if (s != fam.subsets[i])
            throw ParseError("line " + std::to_string(lineno) + ": subset disagrees with the canonical construction");
        load(fam.u, parts[1]);
        load(fam.v, parts[2]);
        load(fam.w, parts[3]);
        load(fam.d, parts[4]);
    }
    if (next_content_line(in, line, lineno)) throw ParseError("line " + std::to_string(lineno) + ": trailing data");
    check_family_invariants(fam);
    return fam;
}

void write_symbols(std::ostream& out, const std::vector<ExtElem>& symbols) {
    for (ExtElem s : symbols) out << s.code << '\n';
}

std::vector<ExtElem> read_symbols(std::istream& in, const ExtField& field) {
    std::vector<ExtElem> out;
    std::string line;
    std::size_t lineno = 0;
    while (next_content_line(in, line, lineno)) {
        std::istringstream ss(line);
        std::uint64_t code;
        std::string rest;
        if (!(ss >> code) || (ss >> rest)) throw ParseError("line " + std::to_string(lineno) + ": expected one symbol");
        if (code >= field.size())
            throw ParseError("line " + std::to_string(lineno) + ": symbol " + std::to_string(code) + " outside the field");
        out.push_back(field.from_code(code));
    }
    return out;
}

std::string bitstring(const BitVec& a) {
    std::string s;
    for (auto b : a) s += b ? '1' : '0';
    return s;
}

void write_certificate(std::ostream& out, const CubeCertificate& cert) {
    for (const auto& c : cert.checked) out << bitstring(c.a) << ' ' << c.i << ' ' << c.value.components_string() << '\n';
}

} // namespace dualcube
