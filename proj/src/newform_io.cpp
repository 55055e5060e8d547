#include "sfcusp/newform_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sfcusp/arith.hpp"
#include "sfcusp/errors.hpp"

namespace sfcusp {
namespace newform_io {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ValidationReport validate(const NewformRecord& record, double tolerance) {
    ValidationReport rep;
    const size_t prec = record.prec();
    if (prec == 0) {
        rep.violations.push_back("empty record");
        return rep;
    }
    if (std::abs(record.lambda_values[0] - modforms::cplx(1.0)) > tolerance)
        rep.violations.push_back("normalization");

    // multiplicativity over coprime pairs within reach
    const uint64_t mn_cap = std::min<uint64_t>(prec, 2000);
    bool mult_bad = false;
    for (uint64_t m = 2; m * m <= mn_cap && !mult_bad; ++m) {
        for (uint64_t n = m + 1; m * n <= mn_cap; ++n) {
            if (arith::gcd_u64(m, n) != 1) continue;
            modforms::cplx lhs = record.lambda_values[m * n - 1];
            modforms::cplx rhs = record.lambda_values[m - 1] * record.lambda_values[n - 1];
            if (std::abs(lhs - rhs) > tolerance * (1.0 + std::abs(rhs))) {
                rep.violations.push_back("multiplicativity at (" + std::to_string(m) + "," +
                                         std::to_string(n) + ")");
                mult_bad = true;
                break;
            }
        }
    }

    // Hecke relation at good primes: lambda(p^2) = lambda(p)^2 - chi(p)
    for (uint32_t p : arith::prime_table(static_cast<uint32_t>(
             std::min<uint64_t>(50, static_cast<uint64_t>(std::sqrt(double(prec))))))) {
        if (record.level % p == 0) continue;
        uint64_t p2 = static_cast<uint64_t>(p) * p;
        if (p2 > prec) break;
        modforms::cplx chi_p = record.character(p);
        modforms::cplx lhs = record.lambda_values[p2 - 1];
        modforms::cplx rhs = record.lambda_values[p - 1] * record.lambda_values[p - 1] - chi_p;
        if (std::abs(lhs - rhs) > tolerance * (1.0 + std::abs(rhs)))
            rep.violations.push_back("Hecke relation at p=" + std::to_string(p));
    }

    // Deligne bound at good primes
    for (uint32_t p : arith::prime_table(static_cast<uint32_t>(std::min<uint64_t>(1000, prec)))) {
        if (record.level % p == 0) continue;
        if (std::abs(record.lambda_values[p - 1]) > 2.0 + std::max(1e-9, tolerance)) {
            rep.violations.push_back("Deligne bound at p=" + std::to_string(p));
            break;
        }
    }
    return rep;
}

std::string serialize(const std::vector<NewformRecord>& records) {
    std::string out;
    out += std::string(kFormatMagic) + " " + std::to_string(kFormatVersion) + "\n";
    out += "records " + std::to_string(records.size()) + "\n";
    for (size_t ri = 0; ri < records.size(); ++ri) {
        const NewformRecord& r = records[ri];
        const bool integral = r.has_integral() && r.integral_a.size() == r.prec();
        out += "record " + std::to_string(ri) + "\n";
        out += "level " + std::to_string(r.level) + "\n";
        out += "weight " + std::to_string(r.weight) + "\n";
        out += "char-modulus " + std::to_string(r.character.modulus) + "\n";
        out += "char-conductor " + std::to_string(r.character.conductor) + "\n";
        if (r.character.label == "trivial") {
            out += "char trivial\n";
        } else {
            out += "char values\n";
            for (uint64_t n = 0; n < r.character.modulus; ++n)
                out += "chi " + std::to_string(n) + " " + fmt(r.character.values[n].real()) +
                       " " + fmt(r.character.values[n].imag()) + "\n";
        }
        out += std::string("normalization ") + (integral ? "integral" : "lambda") + "\n";
        out += "count " + std::to_string(r.prec()) + "\n";
        out += "coefficients\n";
        if (integral) {
            for (size_t n = 1; n <= r.prec(); ++n)
                out += std::to_string(n) + " " + r.integral_a[n - 1].to_string() + "\n";
        } else {
            for (size_t n = 1; n <= r.prec(); ++n)
                out += std::to_string(n) + " " + fmt(r.lambda_values[n - 1].real()) + " " +
                       fmt(r.lambda_values[n - 1].imag()) + "\n";
        }
        out += "end-record\n";
    }
    out += "end\n";
    return out;
}

namespace {

struct LineReader {
    std::istringstream in;
    size_t lineno = 0;
    explicit LineReader(const std::string& text) : in(text) {}
    std::string next() {
        std::string line;
        if (!std::getline(in, line))
            throw MalformedFile("unexpected end of file at line " + std::to_string(lineno + 1));
        ++lineno;
        return line;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw MalformedFile("line " + std::to_string(lineno) + ": " + msg);
    }
};

// "key value" line with the exact expected key
std::string expect_kv(LineReader& lr, const std::string& key) {
    std::string line = lr.next();
    if (line.size() <= key.size() || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ' ')
        lr.fail("expected \"" + key + " <value>\", got \"" + line + "\"");
    return line.substr(key.size() + 1);
}

} // namespace

std::vector<NewformRecord> parse(const std::string& text, double tolerance) {
    LineReader lr(text);
    {
        std::string head = lr.next();
        std::istringstream hs(head);
        std::string magic;
        int version = -1;
        hs >> magic >> version;
        if (magic != kFormatMagic) lr.fail("not a newform file (bad magic)");
        if (version != kFormatVersion)
            lr.fail("unknown format version " + std::to_string(version) +
                    " (this build reads version " + std::to_string(kFormatVersion) + ")");
    }
    size_t nrec = 0;
    try {
        nrec = std::stoull(expect_kv(lr, "records"));
    } catch (const MalformedFile&) {
        throw;
    } catch (...) {
        lr.fail("bad record count");
    }
    std::vector<NewformRecord> out;
    for (size_t ri = 0; ri < nrec; ++ri) {
        if (std::stoull(expect_kv(lr, "record")) != ri) lr.fail("record index out of order");
        NewformRecord rec;
        rec.source = NewformRecord::Source::ingested;
        rec.level = std::stoull(expect_kv(lr, "level"));
        rec.weight = std::stoi(expect_kv(lr, "weight"));
        uint64_t chi_mod = std::stoull(expect_kv(lr, "char-modulus"));
        uint64_t chi_cond = std::stoull(expect_kv(lr, "char-conductor"));
        std::string chi_kind = expect_kv(lr, "char");
        if (chi_kind == "trivial") {
            rec.character = CharacterTable::trivial(chi_mod);
            if (chi_cond != 1) lr.fail("trivial character must declare conductor 1");
        } else if (chi_kind == "values") {
            CharacterTable t;
            t.modulus = chi_mod;
            t.conductor = chi_cond;
            t.label = "table";
            t.values.assign(chi_mod, 0.0);
            bool real = true;
            for (uint64_t n = 0; n < chi_mod; ++n) {
                std::istringstream cs(lr.next());
                std::string tag;
                uint64_t idx;
                double re, im;
                if (!(cs >> tag >> idx >> re >> im) || tag != "chi" || idx != n)
                    lr.fail("bad character value line");
                t.values[n] = {re, im};
                if (im != 0.0) real = false;
            }
            t.is_real = real;
            std::vector<std::string> bad = t.check();
            if (!bad.empty())
                throw InconsistentData("character table violates: " + bad.front());
            rec.character = std::move(t);
        } else {
            lr.fail("unknown character kind \"" + chi_kind + "\"");
        }
        std::string norm = expect_kv(lr, "normalization");
        if (norm != "lambda" && norm != "integral") lr.fail("unknown normalization \"" + norm + "\"");
        size_t count = std::stoull(expect_kv(lr, "count"));
        if (lr.next() != "coefficients") lr.fail("expected \"coefficients\"");
        std::vector<BigInt> ints;
        std::vector<modforms::cplx> lams;
        for (size_t n = 1; n <= count; ++n) {
            std::string line = lr.next();
            if (line == "end-record")
                lr.fail("declared count " + std::to_string(count) + " but only " +
                        std::to_string(n - 1) + " coefficients present");
            std::istringstream cs(line);
            size_t idx;
            if (!(cs >> idx) || idx != n) lr.fail("coefficient index mismatch (want " +
                                                  std::to_string(n) + ")");
            if (norm == "integral") {
                std::string digits;
                if (!(cs >> digits)) lr.fail("missing integer coefficient");
                try {
                    ints.emplace_back(digits);
                } catch (const Error&) {
                    lr.fail("bad integer coefficient \"" + digits + "\"");
                }
            } else {
                double re, im;
                if (!(cs >> re >> im)) lr.fail("coefficient line needs \"index re im\"");
                lams.emplace_back(re, im);
            }
        }
        if (lr.next() != "end-record") lr.fail("expected \"end-record\"");
        if (norm == "integral") {
            rec.integral_a = std::move(ints);
            rec.lambda_values = modforms::lambda_normalize(rec.integral_a, rec.weight);
        } else {
            rec.lambda_values = std::move(lams);
        }
        ValidationReport v = validate(rec, tolerance);
        if (!v.ok())
            throw InconsistentData("record " + std::to_string(ri) +
                                   " violates invariant: " + v.violations.front());
        out.push_back(std::move(rec));
    }
    if (lr.next() != "end") lr.fail("expected final \"end\"");
    return out;
}

std::vector<NewformRecord> load_newforms(const std::string& path, double tolerance) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedFile("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), tolerance);
}

void save_newforms(const std::vector<NewformRecord>& records, const std::string& path) {
    std::string text = serialize(records);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    out << text;
    if (!out) throw IoError("write failed for \"" + path + "\"");
}

std::string conventional_path(uint64_t level, int weight, int index) {
    return "data/newforms/N" + std::to_string(level) + "k" + std::to_string(weight) + "_" +
           std::to_string(index) + ".nf";
}

} // namespace newform_io
} // namespace sfcusp
