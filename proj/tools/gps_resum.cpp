// gps-resum: command-line front end for the generalized power series library.
#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gps/demos.hpp"
#include "gps/gps_io.hpp"
#include "gps/resummation.hpp"
#include "gps/substitutions.hpp"

#ifndef GPS_DATA_DIR
#define GPS_DATA_DIR "data"
#endif

using namespace gps;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::vector<std::string> files;
    double tol = 1e-8;
    std::string grid;
    std::string format = "table";
    int threads = 1;
    bool uncertified = false;
    std::string K = "1";
    std::string growth;
    std::string borel_tail;
    double alpha = 2.0;
};

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 3 || parts.size() > 4) throw UsageError("grid must be <a>:<b>:<n>[:log], got '" + spec + "'");
    double a, b;
    long n;
    try {
        std::size_t pos;
        a = std::stod(parts[0], &pos);
        if (pos != parts[0].size()) throw std::invalid_argument("");
        b = std::stod(parts[1], &pos);
        if (pos != parts[1].size()) throw std::invalid_argument("");
        n = std::stol(parts[2], &pos);
        if (pos != parts[2].size() || n < 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw UsageError("bad grid '" + spec + "'");
    }
    bool log = parts.size() == 4;
    if (log && parts[3] != "log") throw UsageError("grid spacing must be 'log', got '" + parts[3] + "'");
    if (log && !(a > 0 && b > 0)) throw UsageError("log grid needs positive end points");
    std::vector<double> out;
    for (long i = 0; i < n; ++i) {
        double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        out.push_back(log ? a * std::pow(b / a, t) : a + (b - a) * t);
    }
    return out;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) {
        try {
            std::size_t pos;
            out.push_back(std::stod(p, &pos));
            if (pos != p.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw UsageError(std::string("bad ") + what + " '" + s + "'");
        }
    }
    return out;
}

// A column is numeric or text; CSV quoting follows RFC 4180.
struct Cell {
    std::optional<double> num;
    std::string text;
    Cell(double v) : num(v) {}  // NOLINT
    Cell(std::string s) : text(std::move(s)) {}  // NOLINT
    Cell(const char* s) : text(s) {}  // NOLINT
};

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& os, const std::string& format) const {
        if (format == "csv") {
            print_row_csv(os, header_);
            for (const auto& r : rows_) {
                std::vector<std::string> s;
                for (const auto& c : r) s.push_back(c.num ? sci(*c.num) : c.text);
                print_row_csv(os, s);
            }
            return;
        }
        std::vector<std::vector<std::string>> cells{header_};
        for (const auto& r : rows_) {
            std::vector<std::string> s;
            for (const auto& c : r) s.push_back(c.num ? plain(*c.num) : c.text);
            cells.push_back(s);
        }
        std::vector<std::size_t> w(header_.size(), 0);
        for (const auto& r : cells)
            for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
        for (const auto& r : cells) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << r[i];
                if (i + 1 < r.size()) os << std::string(w[i] - r[i].size() + 2, ' ');
            }
            os << "\n";
        }
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;

    static std::string sci(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.16e", v);
        return buf;
    }
    static std::string plain(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.15g", v);
        return buf;
    }
    static void print_row_csv(std::ostream& os, const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) os << ",";
            const std::string& s = r[i];
            if (s.find_first_of(",\"\r\n") != std::string::npos) {
                os << '"';
                for (char ch : s) os << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
                os << '"';
            } else {
                os << s;
            }
        }
        os << "\n";
    }
};

// Evaluates rows concurrently and returns them in grid order.
template <class F>
std::vector<std::vector<Cell>> rows_parallel(std::size_t n, F&& row) {
    std::vector<std::vector<Cell>> out(n);
    std::vector<std::exception_ptr> err(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        try {
            out[i] = row(static_cast<std::size_t>(i));
        } catch (...) {
            err[i] = std::current_exception();
        }
    }
    for (auto& e : err)
        if (e) std::rethrow_exception(e);
    return out;
}

GpsFile load_series(const std::string& path) {
    GpsFile g = load_gps(path);
    if (g.n != 0) throw UsageError(path + ": this command takes series without Y variables");
    return g;
}

int cmd_eval(const RunConfig& c) {
    if (c.files.empty()) throw UsageError("eval needs a .gps file");
    auto grid = parse_grid(c.grid.empty() ? "-3:-1:5" : c.grid);
    Table t({"file", "w", "re", "im", "error", "status"});
    bool bad = false;
    for (const auto& path : c.files) {
        GpsFile g = load_series(path);
        auto rows = rows_parallel(grid.size(), [&](std::size_t i) {
            LogPoint w(g.m, LogCoord(grid[i]));
            CertifiedComplex v = eval_logsum(g.series, w);
            std::string status = v.certified ? "ok" : (c.uncertified ? "uncertified" : "outside");
            return std::vector<Cell>{path, grid[i], v.value.real(), v.value.imag(), v.error, status};
        });
        for (auto& r : rows) {
            if (r.back().text == "outside") bad = true;
            t.add(std::move(r));
        }
    }
    t.print(std::cout, c.format);
    if (bad) std::cerr << "gps-resum: some points lie outside the certified region (use --uncertified)\n";
    return bad ? kCheckFailed : kOk;
}

int cmd_multisum(const RunConfig& c) {
    if (c.files.empty()) throw UsageError("multisum needs a .gps file");
    auto K = parse_list(c.K, "K");
    MultisumOptions o;
    if (!c.growth.empty()) {
        auto g = parse_list(c.growth, "growth");
        if (g.size() != 2) throw UsageError("--growth takes C,D");
        o.growth = GrowthCertificate{g[0], g[1], 1.0};
    }
    if (!c.borel_tail.empty()) {
        auto b = parse_list(c.borel_tail, "borel-tail");
        if (b.size() != 3) throw UsageError("--borel-tail takes C,rho,step");
        o.borel_tail = BorelTailBound{b[0], b[1], b[2]};
    }
    auto grid = parse_grid(c.grid.empty() ? "0.05:0.2:4" : c.grid);
    for (double x : grid)
        if (!(x > 0)) throw UsageError("multisum needs x > 0");
    Table t({"file", "x", "value", "error", "certified", "status", "note"});
    bool bad = false;
    for (const auto& path : c.files) {
        GpsFile g = load_series(path);
        if (g.m != 1) throw UsageError(path + ": multisum is one-variable");
        auto rows = rows_parallel(grid.size(), [&](std::size_t i) {
            MultisumResult r = multisum(g.series, K, std::log(grid[i]), o);
            bool ok = r.error <= c.tol && (r.certified || c.uncertified);
            return std::vector<Cell>{path,        grid[i], r.value.real(), r.error, r.certified ? "yes" : "no",
                                     ok ? "ok" : "flagged", r.note};
        });
        for (auto& r : rows) {
            if (r[5].text != "ok") bad = true;
            t.add(std::move(r));
        }
    }
    t.print(std::cout, c.format);
    return bad ? kCheckFailed : kOk;
}

int cmd_gamma(const RunConfig& c) {
    auto grid = parse_grid(c.grid.empty() ? "1:10:10" : c.grid);
    for (double x : grid)
        if (!(x > 0)) throw UsageError("gamma needs x > 0");
    auto rows = rows_parallel(grid.size(), [&](std::size_t i) {
        DemoValue v = log_gamma(grid[i]);
        double ref = std::lgamma(grid[i]);
        double diff = std::abs(v.value - ref);
        return std::vector<Cell>{grid[i], v.value, v.error, ref, diff, diff <= c.tol ? "ok" : "mismatch"};
    });
    Table t({"x", "log_gamma", "error", "reference", "diff", "status"});
    bool bad = false;
    for (auto& r : rows) {
        if (r.back().text != "ok") bad = true;
        t.add(std::move(r));
    }
    t.print(std::cout, c.format);
    return bad ? kCheckFailed : kOk;
}

int cmd_zeta(const RunConfig& c) {
    auto grid = parse_grid(c.grid.empty() ? "2:10:5" : c.grid);
    for (double s : grid)
        if (!(s >= 2.0)) throw UsageError("zeta is evaluated for s >= 2 (x = e^-s <= e^-2)");
    auto rows = rows_parallel(grid.size(), [&](std::size_t i) {
        DemoValue v = zeta_sum(grid[i]);
        return std::vector<Cell>{grid[i], v.value, v.error};
    });
    Table t({"s", "value", "bound"});
    for (auto& r : rows) t.add(std::move(r));
    t.print(std::cout, c.format);
    return kOk;
}

int cmd_gevrey(const RunConfig& c) {
    TougeronDecomposition d = euler_decomposition();
    std::vector<double> betas;
    for (int b = 1; b <= 10; ++b) betas.push_back(b);
    std::vector<cplx> w;
    for (double x : parse_grid(c.grid.empty() ? "-6:-2.5:30" : c.grid)) w.emplace_back(x, 0.0);
    LogRegion sub = LogRegion::sector(0.0, std::log(d.tau.R[0]), 0.5);
    GevreyReport rep = gevrey_check(d, sub, betas, w);
    Table t({"beta", "q", "left_slope", "used", "status"});
    for (const auto& r : rep.rows)
        t.add({r.beta, r.q, r.left_slope, static_cast<double>(r.used), r.ok ? "ok" : "fail"});
    t.print(std::cout, c.format);
    if (rep.ok)
        std::cout << "D = " << rep.D << "  E = " << rep.E << "\n";
    else
        std::cout << "Gevrey check failed: " << rep.message << "\n";
    return rep.ok ? kOk : kCheckFailed;
}

int cmd_roundtrip(const RunConfig& c) {
    std::vector<std::string> files = c.files;
    if (files.empty())
        for (const char* f : {"convergent-demo.gps", "convergent-half.gps", "irrational.gps"})
            files.push_back(std::string(GPS_DATA_DIR) + "/" + f);
    auto grid = parse_grid(c.grid.empty() ? "-3:-0.5:10" : c.grid);
    Table t({"file", "w", "L(Bf)", "f", "diff", "error", "status"});
    bool bad = false;
    for (const auto& path : files) {
        GpsFile g = load_series(path);
        if (g.m != 1) throw UsageError(path + ": roundtrip is one-variable");
        std::optional<double> radius;
        if (!g.series.is_exact()) {
            if (!g.series.tail()) throw UsageError(path + ": roundtrip needs an exact series or a tail certificate");
            radius = g.series.tail()->radius[0];
        }
        auto rows = rows_parallel(grid.size(), [&](std::size_t i) {
            if (radius && !(grid[i] < std::log(*radius) - 0.1))
                throw UsageError(path + ": grid point w = " + std::to_string(grid[i]) + " is outside the radius");
            QuadratureResult r = laplace_of_borel(g.series, grid[i], radius);
            cplx f = eval_logsum(g.series, LogCoord(grid[i])).value;
            double diff = std::abs(r.value - f);
            return std::vector<Cell>{path, grid[i], r.value.real(), f.real(), diff, r.total_error(),
                                     diff <= c.tol ? "ok" : "fail"};
        });
        for (auto& r : rows) {
            if (r.back().text != "ok") bad = true;
            t.add(std::move(r));
        }
    }
    t.print(std::cout, c.format);
    return bad ? kCheckFailed : kOk;
}

int cmd_subst(const RunConfig& c) {
    MixedSeries f;
    if (c.files.empty()) {
        f = MixedSeries(1, 0);
        f.add_term({Exponent(0.0)}, {}, 1.0);
        f.add_term({Exponent(1.0)}, {}, 1.0);
    } else {
        f = load_gps(c.files.front()).mixed;
        if (f.m() < 1) throw UsageError("subst ramifies X0; the series has no Gevrey variable");
    }
    if (!(c.alpha > 0)) throw UsageError("--alpha must be > 0");
    Substitution s = Substitution::ramification(f.m(), f.n(), 0, c.alpha);
    std::vector<ConsistencySample> samples;
    for (double x : parse_grid(c.grid.empty() ? "-3:-0.5:20" : c.grid))
        samples.push_back({LogPoint(f.m(), LogCoord(cplx(x, 0.3 / c.alpha))), std::vector<cplx>(f.n(), 0.1)});
    ConsistencyReport rep = numeric_consistency(s, f, samples);
    std::cout << s.describe() << "\n";
    std::cout << "sigma F = " << apply(s, f).to_string() << "\n";
    Table t({"samples", "max_discrepancy", "status"});
    bool ok = rep.max_discrepancy <= c.tol;
    t.add({static_cast<double>(rep.samples), rep.max_discrepancy, ok ? "ok" : "fail"});
    t.print(std::cout, c.format);
    return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized power series: evaluation, Borel/Laplace transforms and multisummation"};
    RunConfig c;
    if (const char* env = std::getenv("GPS_RESUM_THREADS")) {
        try {
            c.threads = std::stoi(env);
        } catch (const std::exception&) {
            std::cerr << "gps-resum: ignoring bad GPS_RESUM_THREADS='" << env << "'\n";
        }
    }
    app.add_option("command", c.command, "eval | multisum | gamma | zeta | gevrey | roundtrip | subst")
        ->required()
        ->check(CLI::IsMember({"eval", "multisum", "gamma", "zeta", "gevrey", "roundtrip", "subst"}));
    app.add_option("files", c.files, ".gps input files");
    app.add_option("--tol", c.tol, "tolerance for pass/fail checks")->check(CLI::PositiveNumber);
    app.add_option("--grid", c.grid, "<a>:<b>:<n>[:log]");
    app.add_option("--format", c.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
    app.add_option("--threads", c.threads, "worker threads (default $GPS_RESUM_THREADS or 1)");
    app.add_flag("--uncertified", c.uncertified, "accept results without a certified error bound");
    app.add_option("--K", c.K, "multisum levels, comma separated (default 1)");
    app.add_option("--growth", c.growth, "multisum growth certificate C,D of the Borel sum");
    app.add_option("--borel-tail", c.borel_tail,
                   "multisum bound C,rho,step on unstored Borel coefficients: |b| <= C rho^-beta");
    app.add_option("--alpha", c.alpha, "subst ramification exponent (default 2)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    if (c.threads < 1) {
        std::cerr << "gps-resum: --threads must be >= 1\n";
        return kUsage;
    }
    omp_set_num_threads(c.threads);

    try {
        if (c.command == "eval") return cmd_eval(c);
        if (c.command == "multisum") return cmd_multisum(c);
        if (c.command == "gamma") return cmd_gamma(c);
        if (c.command == "zeta") return cmd_zeta(c);
        if (c.command == "gevrey") return cmd_gevrey(c);
        if (c.command == "roundtrip") return cmd_roundtrip(c);
        return cmd_subst(c);
    } catch (const UsageError& e) {
        std::cerr << "gps-resum: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "gps-resum: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "gps-resum: " << e.what() << "\n";
        return kCheckFailed;
    }
}
