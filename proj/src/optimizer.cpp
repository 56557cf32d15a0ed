#include "noninfo/optimizer.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>

namespace noninfo
{

std::string_view to_string(OptimizerMethod m)
{
    return m == OptimizerMethod::NelderMead ? "nelder-mead" : "coordinate-polish";
}

OptimizerMethod optimizer_method_from_string(std::string_view name)
{
    if (name == "nelder-mead")
        return OptimizerMethod::NelderMead;
    if (name == "coordinate-polish")
        return OptimizerMethod::CoordinatePolish;
    throw std::invalid_argument("unknown optimizer method '" + std::string(name) + "'");
}

namespace
{

constexpr double kPenalty = 1e100;
constexpr double kMaxLogit = 30.0;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Coordinates: u_1..u_m for the points, x = a + (b-a) sin^2(u); v_1..v_{m-1} logits
// for the weights with v_m = 0.
struct Transform
{
    Interval iv;
    int m;

    std::size_t dim() const { return static_cast<std::size_t>(2 * m - 1); }

    Design decode(const double* z, double merge_rel) const
    {
        std::vector<double> pts(static_cast<std::size_t>(m));
        std::vector<double> w(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
        {
            const double s = std::sin(z[i]);
            pts[static_cast<std::size_t>(i)] = std::clamp(iv.lo + iv.length() * s * s, iv.lo, iv.hi);
        }
        double mx = 0.0;
        for (int i = 0; i + 1 < m; ++i)
            mx = std::max(mx, std::clamp(z[m + i], -kMaxLogit, kMaxLogit));
        double total = 0.0;
        for (int i = 0; i < m; ++i)
        {
            const double v = i + 1 < m ? std::clamp(z[m + i], -kMaxLogit, kMaxLogit) : 0.0;
            w[static_cast<std::size_t>(i)] = std::exp(v - mx);
            total += w[static_cast<std::size_t>(i)];
        }
        for (auto& wi : w)
            wi /= total;
        return make_design(pts, w, iv, merge_rel);
    }

    std::vector<double> encode(const Design& d) const
    {
        std::vector<double> z(dim(), 0.0);
        const int k = static_cast<int>(d.size());
        for (int i = 0; i < m; ++i)
        {
            const int src = std::min(i, k - 1);
            const double t = std::clamp((d.points()[static_cast<std::size_t>(src)] - iv.lo) / iv.length(), 0.0, 1.0);
            z[static_cast<std::size_t>(i)] = std::asin(std::sqrt(t));
        }
        const double wl = d.weights()[static_cast<std::size_t>(std::min(m, k) - 1)];
        for (int i = 0; i + 1 < m; ++i)
        {
            const double wi = d.weights()[static_cast<std::size_t>(std::min(i, k - 1))];
            z[static_cast<std::size_t>(m + i)] = std::log(wi / wl);
        }
        return z;
    }
};

struct Problem
{
    const Objective* f;
    Transform tr;
    double merge_rel;
};

double neg_objective(const gsl_vector* v, void* params)
{
    const auto* pb = static_cast<const Problem*>(params);
    const Design d = pb->tr.decode(v->data, pb->merge_rel);
    const double val = (*pb->f)(d);
    return std::isfinite(val) ? -val : kPenalty;
}

struct LocalResult
{
    std::vector<double> z;
    double value = kNegInf;
};

LocalResult nelder_mead(const Problem& pb, std::vector<double> z, double step, const OptimizerOptions& o)
{
    const std::size_t n = z.size();
    gsl_multimin_function fn{&neg_objective, n, const_cast<Problem*>(&pb)};
    gsl_vector* x = gsl_vector_alloc(n);
    gsl_vector* ss = gsl_vector_alloc(n);
    for (std::size_t i = 0; i < n; ++i)
        gsl_vector_set(x, i, z[i]);
    gsl_vector_set_all(ss, step);
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_multimin_fminimizer_set(s, &fn, x, ss);
    for (int it = 0; it < o.max_iters; ++it)
    {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS)
            break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-9) == GSL_SUCCESS)
            break;
    }
    LocalResult r;
    r.z.assign(s->x->data, s->x->data + n);
    r.value = s->fval >= kPenalty ? kNegInf : -s->fval;
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(ss);
    gsl_vector_free(x);
    return r;
}

// cyclic pattern search on single coordinates
LocalResult coordinate_polish(const Problem& pb, LocalResult r)
{
    auto eval = [&](const std::vector<double>& z) {
        const Design d = pb.tr.decode(z.data(), pb.merge_rel);
        const double v = (*pb.f)(d);
        return std::isfinite(v) ? v : kNegInf;
    };
    for (double step = 1e-2; step > 1e-10; step *= 0.25)
    {
        bool improved = true;
        while (improved)
        {
            improved = false;
            for (std::size_t i = 0; i < r.z.size(); ++i)
            {
                for (double sgn : {1.0, -1.0})
                {
                    auto z = r.z;
                    z[i] += sgn * step;
                    const double v = eval(z);
                    if (v > r.value)
                    {
                        r.z = std::move(z);
                        r.value = v;
                        improved = true;
                        break;
                    }
                }
            }
        }
    }
    return r;
}

bool design_less(const Design& a, const Design& b)
{
    if (a.points() != b.points())
        return a.points() < b.points();
    return a.weights() < b.weights();
}

// Snaps points near the ends of the interval onto them when that does not hurt.
Design snap_endpoints(const Objective& f, const Design& d, double& value)
{
    const auto& iv = d.interval();
    const double tol = 1e-5 * iv.length();
    auto pts = d.points();
    bool changed = false;
    for (auto& x : pts)
    {
        if (x != iv.lo && x - iv.lo < tol)
            x = iv.lo, changed = true;
        else if (x != iv.hi && iv.hi - x < tol)
            x = iv.hi, changed = true;
    }
    if (!changed)
        return d;
    const Design s = make_design(pts, d.weights(), iv);
    const double v = f(s);
    if (std::isfinite(v) && v >= value - 1e-12 * std::max(1.0, std::abs(value)))
    {
        value = std::max(v, value);
        return s;
    }
    return d;
}

struct RestartOutcome
{
    Design design;
    double value = kNegInf;
};

RestartOutcome run_restart(const Objective& f, Interval iv, const OptimizerOptions& o, std::vector<double> z0)
{
    const double merge_rel = o.point_merge_tol;
    Problem pb{&f, Transform{iv, o.m}, merge_rel};

    LocalResult best{z0, kNegInf};
    // restart the simplex from its own optimum until it stops improving
    double step = 0.25;
    for (int round = 0; round < 4; ++round)
    {
        auto r = nelder_mead(pb, best.z, step, o);
        const bool better = r.value > best.value + o.ftol * std::max(1.0, std::abs(r.value));
        if (r.value > best.value)
            best = std::move(r);
        if (!better && round > 0)
            break;
        step = 0.05;
    }
    if (o.method == OptimizerMethod::CoordinatePolish && best.value > kNegInf)
        best = coordinate_polish(pb, best);

    RestartOutcome out;
    if (best.value == kNegInf)
        return out;
    Design d = pb.tr.decode(best.z.data(), merge_rel);
    double value = best.value;

    // merged support: re-polish in the smaller class
    if (static_cast<int>(d.size()) < o.m)
    {
        OptimizerOptions sub = o;
        sub.m = static_cast<int>(d.size());
        Problem pb2{&f, Transform{iv, sub.m}, merge_rel};
        auto r = nelder_mead(pb2, pb2.tr.encode(d), 0.02, sub);
        if (r.value >= value)
        {
            d = pb2.tr.decode(r.z.data(), merge_rel);
            value = r.value;
        }
    }
    d = snap_endpoints(f, d, value);
    out.design = std::move(d);
    out.value = value;
    return out;
}

std::once_flag gsl_handler_flag;

} // namespace

OptimizeResult optimize_design(const Objective& f, Interval iv, const OptimizerOptions& opts)
{
    if (opts.m < 1)
        throw std::invalid_argument("optimize_design: m must be >= 1");
    if (opts.restarts < 1)
        throw std::invalid_argument("optimize_design: restarts must be >= 1");
    std::call_once(gsl_handler_flag, [] { gsl_set_error_handler_off(); });

    const Transform tr{iv, opts.m};
    const std::size_t dim = tr.dim();
    const int nr = opts.restarts;

    // Latin hypercube over restarts: one stratum permutation per coordinate from
    // the master stream, jitter from each restart's own stream.
    std::mt19937_64 master(opts.seed);
    std::vector<std::vector<int>> strata(dim, std::vector<int>(static_cast<std::size_t>(nr)));
    for (auto& perm : strata)
    {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), master);
    }

    std::vector<std::vector<double>> starts(static_cast<std::size_t>(nr));
    for (int r = 0; r < nr; ++r)
    {
        std::vector<double> z(dim);
        if (r == 0 || r == 1)
        {
            // structured starts: equispaced with equal weights; endpoint-heavy
            std::vector<double> pts(static_cast<std::size_t>(opts.m)), w(static_cast<std::size_t>(opts.m));
            for (int i = 0; i < opts.m; ++i)
            {
                const double t = opts.m == 1 ? 0.5 : static_cast<double>(i) / (opts.m - 1);
                pts[static_cast<std::size_t>(i)] = iv.lo + iv.length() * t;
                const bool end = (i == 0 || i == opts.m - 1);
                w[static_cast<std::size_t>(i)] = (r == 1 && end) ? 2.0 : 1.0;
            }
            const double tot = std::accumulate(w.begin(), w.end(), 0.0);
            for (auto& wi : w)
                wi /= tot;
            if (r == 1)
            {
                // pull the interior points toward the ends as well
                for (int i = 1; i + 1 < opts.m; ++i)
                {
                    const double t = static_cast<double>(i) / (opts.m - 1);
                    pts[static_cast<std::size_t>(i)] = iv.lo + iv.length() * (0.5 - 0.5 * std::cos(std::numbers::pi * t));
                }
            }
            // interior offsets keep sin^2 away from its flat ends
            for (auto& x : pts)
                x = std::clamp(x, iv.lo + 1e-3 * iv.length(), iv.hi - 1e-3 * iv.length());
            z = tr.encode(make_design(pts, w, iv, 0.0));
        }
        else
        {
            std::seed_seq sq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                             static_cast<std::uint32_t>(r)};
            std::mt19937_64 rng(sq);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (std::size_t j = 0; j < dim; ++j)
            {
                const double u = (strata[j][static_cast<std::size_t>(r)] + unit(rng)) / nr;
                z[j] = j < static_cast<std::size_t>(opts.m) ? u * kHalfPi : 4.0 * u - 2.0;
            }
        }
        starts[static_cast<std::size_t>(r)] = std::move(z);
    }

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(nr));
#pragma omp parallel for schedule(dynamic, 1) if (opts.exec == Exec::Parallel)
    for (int r = 0; r < nr; ++r)
        outcomes[static_cast<std::size_t>(r)] = run_restart(f, iv, opts, starts[static_cast<std::size_t>(r)]);

    OptimizeResult res;
    const RestartOutcome* best = nullptr;
    for (const auto& o : outcomes)
    {
        res.restart_values.push_back(o.value);
        if (o.value > kNegInf &&
            (!best || o.value > best->value || (o.value == best->value && design_less(o.design, best->design))))
            best = &o;
        res.best_so_far.push_back(best ? best->value : kNegInf);
    }
    if (!best)
        throw OptimizerError("criterion degenerate everywhere");
    res.design = best->design;
    res.value = best->value;
    return res;
}

OptimizeResult optimize_design(const Criterion& crit, const OptimizerOptions& opts)
{
    const Objective f = [&crit](const Design& d) { return crit.objective(d); };
    return optimize_design(f, crit.model().design_space(), opts);
}

VerifiedDesign optimize_and_verify(const Criterion& crit, const OptimizerOptions& opts, double tol, int grid_size)
{
    VerifiedDesign out;
    out.result = optimize_design(crit, opts);
    out.report = verify_design(out.result.design, crit, grid_size, tol);
    if (out.report.pass)
        return out;
    OptimizerOptions more = opts;
    more.m = opts.m + 1;
    out.result = optimize_design(crit, more);
    out.report = verify_design(out.result.design, crit, grid_size, tol);
    out.escalated = true;
    return out;
}

} // namespace noninfo
