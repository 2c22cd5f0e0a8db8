#include "gps/gps_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace gps {

ParseError::ParseError(std::size_t ln, const std::string& msg)
    : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}

namespace {

double parse_real(const std::string& tok, std::size_t ln, const char* what) {
    if (tok == "inf" || tok == "+inf") return kInf;
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || errno == ERANGE || std::isnan(v))
        throw ParseError(ln, std::string("bad ") + what + " '" + tok + "'");
    return v;
}

std::size_t parse_count(const std::string& tok, std::size_t ln, const char* what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(ln, std::string("bad ") + what + " '" + tok + "'");
    return std::stoul(tok);
}

// key=value, key checked.
std::string keyed(const std::string& tok, const std::string& key, std::size_t ln) {
    if (tok.rfind(key + "=", 0) != 0) throw ParseError(ln, "expected " + key + "=..., got '" + tok + "'");
    return tok.substr(key.size() + 1);
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string support_token(const SupportDescriptor& s) {
    switch (s.kind()) {
        case SupportDescriptor::Kind::arithmetic:
        case SupportDescriptor::Kind::log_integers: return s.describe();
        default: return "finite";
    }
}

}  // namespace

GpsFile parse_gps(std::istream& in) {
    GpsFile out;
    std::string raw;
    std::size_t ln = 0;
    bool have_header = false;
    int ydeg = -1;
    struct SupportLine {
        std::string kind;
        double step = 0.0;
        double cutoff = kInf;
    };
    std::map<std::size_t, SupportLine> supports;
    std::vector<std::pair<Monomial, cplx>> terms;
    std::optional<std::pair<double, double>> tail;

    while (std::getline(in, raw)) {
        ++ln;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (!have_header) {
            if (tok[0] != "gps") throw ParseError(ln, "expected header 'gps 1 vars=<m> yvars=<n>'");
            if (tok.size() < 4 || tok.size() > 5) throw ParseError(ln, "malformed header");
            if (tok[1] != "1") throw ParseError(ln, "unsupported format version '" + tok[1] + "'");
            out.m = parse_count(keyed(tok[2], "vars", ln), ln, "variable count");
            out.n = parse_count(keyed(tok[3], "yvars", ln), ln, "Y-variable count");
            if (tok.size() == 5) ydeg = static_cast<int>(parse_count(keyed(tok[4], "ydeg", ln), ln, "Y degree"));
            if (out.m == 0 && out.n == 0) throw ParseError(ln, "a series needs at least one variable");
            have_header = true;
            continue;
        }

        const std::string& d = tok[0];
        if (d == "support") {
            if (tok.size() != 4) throw ParseError(ln, "support line needs: support <var> <kind> cutoff=<real>");
            std::size_t v = parse_count(tok[1], ln, "variable index");
            if (v >= out.m) throw ParseError(ln, "support for variable " + std::to_string(v) + " out of range");
            if (supports.count(v)) throw ParseError(ln, "duplicate support line for variable " + std::to_string(v));
            SupportLine s;
            if (tok[2] == "finite" || tok[2] == "logint" || tok[2] == "sumclosure") {
                s.kind = tok[2];
            } else if (tok[2].rfind("arith:", 0) == 0) {
                s.kind = "arith";
                try {
                    s.step = parse_exponent(tok[2].substr(6)).value;
                } catch (const std::invalid_argument&) {
                    throw ParseError(ln, "bad arithmetic step '" + tok[2].substr(6) + "'");
                }
                if (!(s.step > 0)) throw ParseError(ln, "arithmetic step must be > 0");
            } else {
                throw ParseError(ln, "unknown support kind '" + tok[2] + "'");
            }
            s.cutoff = parse_real(keyed(tok[3], "cutoff", ln), ln, "cutoff");
            if (!(s.cutoff >= 0)) throw ParseError(ln, "cutoff must be >= 0");
            supports[v] = s;
        } else if (d == "term") {
            if (tok.size() != 1 + out.m + out.n + 2)
                throw ParseError(ln, "term line needs " + std::to_string(out.m) + " exponents, " +
                                         std::to_string(out.n) + " Y degrees and re im");
            Monomial mono;
            for (std::size_t k = 0; k < out.m; ++k) {
                Exponent e;
                try {
                    e = parse_exponent(tok[1 + k]);
                } catch (const std::invalid_argument&) {
                    throw ParseError(ln, "bad exponent '" + tok[1 + k] + "'");
                }
                if (!(e.value >= 0) || !std::isfinite(e.value)) throw ParseError(ln, "exponents must be finite and >= 0");
                mono.x.push_back(e);
            }
            for (std::size_t k = 0; k < out.n; ++k)
                mono.y.push_back(static_cast<std::uint32_t>(parse_count(tok[1 + out.m + k], ln, "Y degree")));
            double re = parse_real(tok[1 + out.m + out.n], ln, "real part");
            double im = parse_real(tok[2 + out.m + out.n], ln, "imaginary part");
            if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError(ln, "coefficients must be finite");
            terms.emplace_back(mono, cplx(re, im));
        } else if (d == "tail") {
            if (tok.size() != 3) throw ParseError(ln, "tail line needs: tail r=<real> bound=<real>");
            if (tail) throw ParseError(ln, "duplicate tail line");
            double r = parse_real(keyed(tok[1], "r", ln), ln, "tail radius");
            double b = parse_real(keyed(tok[2], "bound", ln), ln, "tail bound");
            if (!(r > 0) || !(b >= 0)) throw ParseError(ln, "tail needs r > 0 and bound >= 0");
            tail = {r, b};
        } else {
            throw ParseError(ln, "unknown directive '" + d + "'");
        }
    }
    if (!have_header) throw ParseError(ln ? ln : 1, "empty file");

    std::vector<double> cutoff(out.m, kInf);
    for (const auto& [v, s] : supports) cutoff[v] = s.cutoff;

    // Stored exponents per variable, for finite / sumclosure.
    std::vector<std::vector<double>> stored(out.m);
    for (const auto& [mono, c] : terms)
        for (std::size_t k = 0; k < out.m; ++k) stored[k].push_back(mono.x[k].value);

    std::vector<SupportDescriptor> sup;
    if (!supports.empty()) {
        for (std::size_t k = 0; k < out.m; ++k) {
            auto it = supports.find(k);
            SupportDescriptor fin = SupportDescriptor::finite(stored[k].empty() ? std::vector<double>{0.0} : stored[k]);
            if (it == supports.end() || it->second.kind == "finite") sup.push_back(fin);
            else if (it->second.kind == "arith") sup.push_back(SupportDescriptor::arithmetic(it->second.step));
            else if (it->second.kind == "logint") sup.push_back(SupportDescriptor::log_integers());
            else sup.push_back(SupportDescriptor::sum_closure(fin, fin));
        }
    }

    out.mixed = MixedSeries(out.m, out.n, cutoff, ydeg);
    for (const auto& [mono, c] : terms) {
        if (!out.mixed.box().inside(mono)) continue;
        accumulate(out.mixed.mutable_terms(), mono, c);
    }
    if (out.n == 0) {
        GenSeries g(out.m, cutoff, sup);
        for (const auto& [mono, c] : terms) g.add_term(mono.x, c);
        // Declared supports must hold every stored exponent.
        if (!sup.empty())
            for (const auto& [mono, c] : g.terms())
                for (std::size_t k = 0; k < out.m; ++k)
                    if (!sup[k].contains(mono.x[k].value))
                        throw ParseError(ln, "exponent " + mono.x[k].to_string() + " of variable " +
                                                 std::to_string(k) + " lies outside its declared support");
        if (tail) g = g.with_tail(TailBound::at(out.m, tail->first, tail->second));
        out.series = g;
    } else if (tail) {
        throw ParseError(ln, "tail lines are only supported for series without Y variables");
    }
    return out;
}

GpsFile parse_gps_string(const std::string& text) {
    std::istringstream in(text);
    return parse_gps(in);
}

GpsFile load_gps(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return parse_gps(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line, path + ": " + std::string(e.what()).substr(std::string(e.what()).find(':') + 2));
    }
}

void write_gps(std::ostream& out, const GenSeries& f) {
    out << "gps 1 vars=" << f.nvars() << " yvars=0\n";
    if (f.has_declared_supports() || std::any_of(f.cutoff().begin(), f.cutoff().end(), [](double c) {
            return std::isfinite(c);
        })) {
        auto sup = f.supports();
        for (std::size_t k = 0; k < f.nvars(); ++k)
            out << "support " << k << " " << support_token(sup[k]) << " cutoff=" << fmt(f.cutoff()[k]) << "\n";
    }
    for (const auto& [mono, c] : f.terms()) {
        out << "term";
        for (const auto& e : mono.x) out << " " << e.to_string();
        out << " " << fmt(c.real()) << " " << fmt(c.imag()) << "\n";
    }
    if (f.tail() && !f.tail()->exact()) {
        double r = f.tail()->radius.empty() ? 1.0 : f.tail()->radius.front();
        out << "tail r=" << fmt(r) << " bound=" << fmt(f.tail()->bound) << "\n";
    }
}

void write_gps(std::ostream& out, const MixedSeries& f) {
    out << "gps 1 vars=" << f.m() << " yvars=" << f.n();
    if (f.y_degree() >= 0) out << " ydeg=" << f.y_degree();
    out << "\n";
    for (std::size_t k = 0; k < f.m(); ++k)
        if (std::isfinite(f.x_cutoff()[k])) out << "support " << k << " finite cutoff=" << fmt(f.x_cutoff()[k]) << "\n";
    for (const auto& [mono, c] : f.terms()) {
        out << "term";
        for (const auto& e : mono.x) out << " " << e.to_string();
        for (auto d : mono.y) out << " " << d;
        out << " " << fmt(c.real()) << " " << fmt(c.imag()) << "\n";
    }
}

}  // namespace gps
