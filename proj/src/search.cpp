#include "medians/search.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "medians/checkpoint.hpp"
#include "medians/curves.hpp"

namespace medians {

std::vector<Rational> rationals_of_height(const HeightBound& b) {
    std::vector<Rational> out;
    for (long p = -b.H; p <= b.H; ++p)
        for (long q = 1; q <= b.H; ++q)
            if (std::gcd(std::abs(p), q) == 1) out.emplace_back(p, q);
    return out;
}

long count_rationals_of_height(long H) {
    long n = 0;
    for (long p = -H; p <= H; ++p)
        for (long q = 1; q <= H; ++q)
            if (std::gcd(std::abs(p), q) == 1) ++n;
    return n;
}

namespace {

struct UnitOutcome {
    long scanned = 0;
    std::vector<std::string> witnesses;
};

/// A search lowered to a deterministic outer enumeration: scan_outer(i)
/// handles one outer index; units are `chunk` consecutive indices.
struct Job {
    std::string target;
    long height = 0;
    long n_outer = 0;
    long chunk = 1;
    std::function<UnitOutcome(long)> scan_outer;
    long extra_scanned = 0; // deterministic pre-phase work (e.g. pool building)
};

SearchResult finish(const Job& job, long scanned, std::vector<std::string> witnesses,
                    bool complete) {
    SearchResult r;
    r.target = job.target;
    r.height = job.height;
    r.scanned = scanned;
    std::sort(witnesses.begin(), witnesses.end());
    r.witnesses = std::move(witnesses);
    r.exhaustive = complete;
    return r;
}

SearchResult run_plain_loop(const Job& job) {
    long scanned = job.extra_scanned;
    std::vector<std::string> ws;
    for (long i = 0; i < job.n_outer; ++i) {
        UnitOutcome o = job.scan_outer(i);
        scanned += o.scanned;
        std::move(o.witnesses.begin(), o.witnesses.end(), std::back_inserter(ws));
    }
    return finish(job, scanned, std::move(ws), true);
}

SearchResult run_engine(const Job& job, const EngineOptions& opts) {
    if (opts.single_threaded) {
        if (!opts.checkpoint_path.empty())
            throw std::invalid_argument("single-threaded reference mode does not checkpoint");
        return run_plain_loop(job);
    }
    if (opts.unit_size < 1) throw std::invalid_argument("unit_size must be >= 1");

    long n_units = (job.n_outer + job.chunk - 1) / job.chunk;
    Checkpoint state;
    state.target = job.target;
    state.height = job.height;
    state.unit_size = opts.unit_size;
    state.n_units = n_units;
    state.done.assign(n_units, false);

    bool persist = !opts.checkpoint_path.empty();
    if (persist && std::filesystem::exists(opts.checkpoint_path)) {
        Checkpoint loaded = load_checkpoint(opts.checkpoint_path);
        if (loaded.target != state.target || loaded.height != state.height ||
            loaded.unit_size != state.unit_size || loaded.n_units != state.n_units)
            throw CheckpointError("checkpoint belongs to a different search");
        state = std::move(loaded);
    }

    std::vector<long> todo;
    for (long u = 0; u < n_units; ++u)
        if (!state.done[u]) todo.push_back(u);
    if (opts.max_units >= 0 && static_cast<long>(todo.size()) > opts.max_units)
        todo.resize(opts.max_units);

    std::vector<UnitOutcome> fresh(n_units);
    std::atomic<size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mu;

    auto work = [&]() {
        try {
            while (true) {
                size_t slot = cursor.fetch_add(1);
                if (slot >= todo.size()) break;
                long u = todo[slot];
                UnitOutcome acc;
                long lo = u * job.chunk;
                long hi = std::min(job.n_outer, lo + job.chunk);
                for (long i = lo; i < hi; ++i) {
                    UnitOutcome o = job.scan_outer(i);
                    acc.scanned += o.scanned;
                    std::move(o.witnesses.begin(), o.witnesses.end(),
                              std::back_inserter(acc.witnesses));
                }
                fresh[u] = std::move(acc);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
        }
    };

    size_t nthreads = std::min<size_t>(std::max(1, opts.workers), std::max<size_t>(todo.size(), 1));
    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (size_t i = 0; i < nthreads; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    for (long u : todo) {
        state.done[u] = true;
        state.unit_scanned[u] = fresh[u].scanned;
        if (!fresh[u].witnesses.empty()) state.unit_witnesses[u] = std::move(fresh[u].witnesses);
    }
    bool complete = std::all_of(state.done.begin(), state.done.end(), [](bool b) { return b; });
    if (persist) save_checkpoint(opts.checkpoint_path, state);

    long scanned = job.extra_scanned;
    std::vector<std::string> ws;
    for (const auto& [u, c] : state.unit_scanned) {
        (void)u;
        scanned += c;
    }
    for (const auto& [u, unit_ws] : state.unit_witnesses) {
        (void)u;
        ws.insert(ws.end(), unit_ws.begin(), unit_ws.end());
    }
    return finish(job, scanned, std::move(ws), complete);
}

std::vector<Rational> dense_rational_coeffs(const RationalPoly& f, const std::string& v) {
    std::vector<Rational> out;
    for (const auto& c : f.coefficients_in(v)) {
        if (!c.is_constant())
            throw std::invalid_argument("search: right-hand side is not univariate");
        out.push_back(c.eval(std::map<std::string, Rational>{}));
    }
    return out;
}

Rational horner(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational v = coeffs.back();
    for (size_t i = coeffs.size() - 1; i-- > 0;) v = v * x + coeffs[i];
    return v;
}

std::string encode_pair(const Rational& a, const Rational& b) {
    return to_string(a) + " " + to_string(b);
}

Job make_even_curve_job(const std::string& target, const RationalPoly& rhs,
                        const HeightBound& bound, long unit_size) {
    if (rhs.active_variables().size() > 1)
        throw std::invalid_argument("search: right-hand side is not univariate");
    int d = rhs.degree();
    if (d < 4 || d > 6)
        throw std::invalid_argument("search: wrong curve model (degree must be 4..6)");
    if (!is_squarefree(rhs))
        throw std::invalid_argument("search: wrong curve model (right-hand side not squarefree)");
    std::string var =
        rhs.active_variables().empty() ? rhs.variables().front() : rhs.active_variables().front();
    auto coeffs = std::make_shared<const std::vector<Rational>>(dense_rational_coeffs(rhs, var));

    long H = bound.H;
    Job job;
    job.target = target;
    job.height = H;
    job.n_outer = 2 * H + 1;
    job.chunk = std::max<long>(1, unit_size / H);
    job.scan_outer = [coeffs, H](long idx) {
        UnitOutcome o;
        long p = idx - H;
        for (long q = 1; q <= H; ++q) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            ++o.scanned;
            Rational x(p, q);
            if (auto z = is_rational_square(horner(*coeffs, x))) {
                o.witnesses.push_back(encode_pair(x, *z));
                if (!z->is_zero()) o.witnesses.push_back(encode_pair(x, -*z));
            }
        }
        return o;
    };
    return job;
}

void check_angle_params(const Rational& lambda, const Rational& alpha) {
    if (lambda.is_zero() || lambda == Rational(1) || lambda == Rational(-1))
        throw std::invalid_argument("search: lambda must avoid {0, 1, -1}");
    if (alpha.sign() <= 0) throw std::invalid_argument("search: alpha must be positive");
    if (square(lambda) + square(alpha) != Rational(1))
        throw std::invalid_argument("search: need lambda^2 + alpha^2 = 1");
}

/// Second intersection of the slope-t chord through (1, 0) with the ellipse
/// 1 - x^2 - y^2 + 2*lambda*x*y = 0; nullopt when the chord is tangent there.
std::optional<std::pair<Rational, Rational>> chord_second_point(const Rational& lambda,
                                                               const Rational& t) {
    Rational d = Rational(2) * lambda * t - Rational(1) - square(t);
    if (d.is_zero()) return std::nullopt;
    Rational x = (Rational(1) - square(t)) / d;
    Rational y = t * (x - Rational(1));
    return std::make_pair(x, y);
}

Job make_perfect_job(const Rational& lambda, const Rational& alpha, const HeightBound& bound,
                     long unit_size) {
    check_angle_params(lambda, alpha);
    long H = bound.H;
    Job job;
    job.target = "perfect";
    job.height = H;
    job.n_outer = 2 * H + 1;
    job.chunk = std::max<long>(1, unit_size / H);
    job.scan_outer = [lambda, H](long idx) {
        UnitOutcome o;
        long p = idx - H;
        for (long q = 1; q <= H; ++q) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            ++o.scanned;
            auto pt = chord_second_point(lambda, Rational(p, q));
            if (!pt) continue;
            const auto& [a, b] = *pt;
            if (a.sign() <= 0 || b.sign() <= 0) continue;
            TriangleSides sides(a, b, Rational(1));
            if (is_perfect_triangle(sides).perfect) o.witnesses.push_back(encode_pair(a, b));
        }
        return o;
    };
    return job;
}

const QuadPoint& base_origin() {
    static const QuadPoint p(Rational(0), Rational(0), Integer(1));
    return p;
}
const QuadPoint& base_unit() {
    static const QuadPoint p(Rational(1), Rational(0), Integer(1));
    return p;
}

std::string encode_median_set(const std::vector<const QuadPoint*>& pts) {
    std::string s;
    for (const QuadPoint* p : pts) {
        if (!s.empty()) s += ";";
        s += to_string(p->x) + "," + to_string(p->y_coeff);
    }
    return s;
}

/// True when every non-collinear triple in pts is a rational median triple;
/// triples made of the two base points and one candidate are already
/// certified by the pool phase and skipped.
bool subset_is_median_set(const std::vector<const QuadPoint*>& pts) {
    size_t n = pts.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c) {
                if (a == 0 && b == 1) continue;
                if (are_collinear(*pts[a], *pts[b], *pts[c])) continue;
                if (!is_rational_median_triple(*pts[a], *pts[b], *pts[c])) return false;
            }
    return true;
}

Job make_median_set_job(const Integer& k, const HeightBound& bound, int n) {
    if (n < 4) throw std::invalid_argument("search: median sets need n >= 4");
    if (k < 1 || !is_squarefree_integer(k))
        throw std::invalid_argument("search: k must be a positive squarefree integer");

    auto pool = std::make_shared<const std::vector<QuadPoint>>(candidate_third_points(k, bound));
    long R = count_rationals_of_height(bound.H);
    long P = static_cast<long>(pool->size());
    int m = n - 2; // candidates per subset

    Job job;
    job.target = "median-set";
    job.height = bound.H;
    job.n_outer = P;
    job.chunk = 1;
    job.extra_scanned = R * (R - 1); // candidate pairs tested while pooling
    job.scan_outer = [pool, P, m](long first) {
        UnitOutcome o;
        if (P - first < m) return o;
        std::vector<long> sel(m);
        for (int j = 0; j < m; ++j) sel[j] = first + j;
        std::vector<const QuadPoint*> pts(2 + m);
        pts[0] = &base_origin();
        pts[1] = &base_unit();
        while (true) {
            ++o.scanned;
            for (int j = 0; j < m; ++j) pts[2 + j] = &(*pool)[sel[j]];
            if (subset_is_median_set(pts)) o.witnesses.push_back(encode_median_set(pts));
            int j = m - 1;
            while (j >= 1 && sel[j] == P - (m - j)) --j;
            if (j < 1) break;
            ++sel[j];
            for (int l = j + 1; l < m; ++l) sel[l] = sel[l - 1] + 1;
        }
        return o;
    };
    return job;
}

} // namespace

SearchResult search_even_sextic_points(const RationalPoly& rhs, const HeightBound& bound,
                                       const EngineOptions& opts) {
    return run_engine(make_even_curve_job("sextic", rhs, bound, opts.unit_size), opts);
}

SearchResult search_line_case_points(const Rational& a, const Rational& b, const Rational& c1,
                                     const Rational& c2, const Rational& c3,
                                     const HeightBound& bound, const EngineOptions& opts) {
    RationalPoly rhs = hyperelliptic_rhs(build_line_case_curve(a, b, c1, c2, c3));
    return run_engine(make_even_curve_job("line-case", rhs, bound, opts.unit_size), opts);
}

std::vector<std::pair<Rational, Rational>> enumerate_rational_angles(const HeightBound& bound) {
    std::vector<std::pair<Rational, Rational>> out;
    for (long m = 2; m <= bound.H; ++m)
        for (long n = 1; n < m; ++n) {
            if (std::gcd(m, n) != 1 || (m + n) % 2 == 0) continue;
            Rational den(m * m + n * n);
            out.emplace_back(Rational(m * m - n * n) / den, Rational(2 * m * n) / den);
        }
    return out;
}

std::vector<std::pair<Rational, Rational>> ellipse_points(const Rational& lambda,
                                                          const HeightBound& bound) {
    if (lambda.is_zero() || lambda == Rational(1) || lambda == Rational(-1))
        throw std::invalid_argument("ellipse_points: lambda must avoid {0, 1, -1}");
    std::vector<std::pair<Rational, Rational>> out;
    for (const Rational& t : rationals_of_height(bound)) {
        auto pt = chord_second_point(lambda, t);
        if (!pt) continue;
        if (pt->first.sign() > 0 && pt->second.sign() > 0) out.push_back(*pt);
    }
    return out;
}

SearchResult search_perfect_at_angle(const Rational& lambda, const Rational& alpha,
                                     const HeightBound& bound, const EngineOptions& opts) {
    return run_engine(make_perfect_job(lambda, alpha, bound, opts.unit_size), opts);
}

std::vector<QuadPoint> candidate_third_points(const Integer& k, const HeightBound& bound) {
    if (k < 1 || !is_squarefree_integer(k))
        throw std::invalid_argument("candidate_third_points: k must be positive and squarefree");
    std::vector<QuadPoint> out;
    std::vector<Rational> values = rationals_of_height(bound);
    for (const Rational& r1 : values)
        for (const Rational& r2 : values) {
            if (r2.is_zero()) continue;
            QuadPoint cand(r1, r2, k);
            if (is_rational_median_triple(base_origin(), base_unit(), cand)) out.push_back(cand);
        }
    return out;
}

SearchResult search_median_sets(const Integer& k, const HeightBound& bound, int n,
                                const EngineOptions& opts) {
    return run_engine(make_median_set_job(k, bound, n), opts);
}

SearchResult oracle_sextic_points(const RationalPoly& rhs, const HeightBound& bound) {
    Job job = make_even_curve_job("sextic", rhs, bound, 1);
    long H = bound.H;
    auto coeffs = dense_rational_coeffs(
        rhs, rhs.active_variables().empty() ? rhs.variables().front()
                                            : rhs.active_variables().front());
    SearchResult r;
    r.target = job.target;
    r.height = H;
    for (long p = -H; p <= H; ++p)
        for (long q = 1; q <= H; ++q) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            ++r.scanned;
            Rational x(p, q);
            if (auto z = is_rational_square(horner(coeffs, x))) {
                r.witnesses.push_back(encode_pair(x, *z));
                if (!z->is_zero()) r.witnesses.push_back(encode_pair(x, -*z));
            }
        }
    std::sort(r.witnesses.begin(), r.witnesses.end());
    r.exhaustive = true;
    return r;
}

SearchResult oracle_line_case_points(const Rational& a, const Rational& b, const Rational& c1,
                                     const Rational& c2, const Rational& c3,
                                     const HeightBound& bound) {
    RationalPoly rhs = hyperelliptic_rhs(build_line_case_curve(a, b, c1, c2, c3));
    SearchResult r = oracle_sextic_points(rhs, bound);
    r.target = "line-case";
    return r;
}

SearchResult oracle_perfect_at_angle(const Rational& lambda, const Rational& alpha,
                                     const HeightBound& bound) {
    check_angle_params(lambda, alpha);
    SearchResult r;
    r.target = "perfect";
    r.height = bound.H;
    for (const Rational& t : rationals_of_height(bound)) {
        ++r.scanned;
        auto pt = chord_second_point(lambda, t);
        if (!pt) continue;
        const auto& [x, y] = *pt;
        if (x.sign() <= 0 || y.sign() <= 0) continue;
        if (is_perfect_triangle(TriangleSides(x, y, Rational(1))).perfect)
            r.witnesses.push_back(encode_pair(x, y));
    }
    std::sort(r.witnesses.begin(), r.witnesses.end());
    r.exhaustive = true;
    return r;
}

SearchResult oracle_median_sets(const Integer& k, const HeightBound& bound, int n) {
    if (n < 4) throw std::invalid_argument("search: median sets need n >= 4");
    std::vector<QuadPoint> pool = candidate_third_points(k, bound);
    long R = count_rationals_of_height(bound.H);
    long P = static_cast<long>(pool.size());
    int m = n - 2;

    SearchResult r;
    r.target = "median-set";
    r.height = bound.H;
    r.scanned = R * (R - 1);
    if (P >= m) {
        std::vector<long> sel(m);
        std::iota(sel.begin(), sel.end(), 0);
        std::vector<const QuadPoint*> pts(2 + m);
        pts[0] = &base_origin();
        pts[1] = &base_unit();
        while (true) {
            ++r.scanned;
            for (int j = 0; j < m; ++j) pts[2 + j] = &pool[sel[j]];
            if (subset_is_median_set(pts)) r.witnesses.push_back(encode_median_set(pts));
            int j = m - 1;
            while (j >= 0 && sel[j] == P - (m - j)) --j;
            if (j < 0) break;
            ++sel[j];
            for (int l = j + 1; l < m; ++l) sel[l] = sel[l - 1] + 1;
        }
    }
    std::sort(r.witnesses.begin(), r.witnesses.end());
    r.exhaustive = true;
    return r;
}

} // namespace medians
