#include "tsvdec/solver.hpp"

#include <cmath>

#include "tsvdec/nlm.hpp"

namespace tsvdec {

VectorField2 shrink_p(const VectorField2& p, double dt, double alpha1) {
    const double thr = dt * alpha1;
    VectorField2 out(p.rows(), p.cols());
    const double* a = p.c1.data();
    const double* b = p.c2.data();
    double* oa = out.c1.data();
    double* ob = out.c2.data();
    const std::size_t n = p.c1.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double mag = std::sqrt(a[k] * a[k] + b[k] * b[k]);
        if (mag <= thr) {
            oa[k] = 0.0;
            ob[k] = 0.0;
        } else {
            const double fac = 1.0 - thr / mag;
            oa[k] = fac * a[k];
            ob[k] = fac * b[k];
        }
    }
    return out;
}

StageWeights make_stage_weights(const WeightField& eta, double cFrozen) {
    const double etaMin = field_min(eta.eta);
    if (etaMin <= 0.0)
        throw std::invalid_argument("weight field must be strictly positive");
    StageWeights w;
    w.invEta = ScalarField(eta.eta.rows(), eta.eta.cols());
    w.invEta2 = ScalarField(eta.eta.rows(), eta.eta.cols());
    w.cEff = cFrozen / (etaMin * etaMin);
    const double* e = eta.eta.data();
    double* r = w.invEta.data();
    double* r2 = w.invEta2.data();
    for (std::size_t k = 0; k < eta.eta.size(); ++k) {
        r[k] = 1.0 / e[k];
        r2[k] = r[k] * r[k];
    }
    return w;
}

std::pair<VectorField2, ScalarField> g_step(const SolverState& s, const StageWeights& w,
                                            const SolverParams& prm, SpectralWorkspace& ws) {
    const int m = s.g.rows(), n = s.g.cols();
    const std::size_t sz = s.g.c1.size();

    // b_k = g_k - d_k+((c - 1/eta^2) div g) - d_k+((1/eta) v)
    const ScalarField dg = divergence(s.g);
    ScalarField scaledDiv(m, n), scaledV(m, n);
    {
        const double* pd = dg.data();
        const double* pv = s.v.data();
        const double* r = w.invEta.data();
        const double* r2 = w.invEta2.data();
        double* sd = scaledDiv.data();
        double* sv = scaledV.data();
        for (std::size_t k = 0; k < sz; ++k) {
            sd[k] = (w.cEff - r2[k]) * pd[k];
            sv[k] = r[k] * pv[k];
        }
    }

    VectorField2 b(m, n);
    for (int comp = 1; comp <= 2; ++comp) {
        const ScalarField d1 = diff(scaledDiv, comp, Diff::Forward);
        const ScalarField d2 = diff(scaledV, comp, Diff::Forward);
        const double* g0 = (comp == 1 ? s.g.c1 : s.g.c2).data();
        const double* pa = d1.data();
        const double* pb = d2.data();
        double* pout = (comp == 1 ? b.c1 : b.c2).data();
        for (std::size_t k = 0; k < sz; ++k) pout[k] = g0[k] - pa[k] - pb[k];
    }

    VectorField2 g = ws.solve_g_constant_part(b, prm.dt, prm.alpha2, w.cEff);

    ScalarField vHalf = divergence(g);
    {
        double* pv = vHalf.data();
        const double* r = w.invEta.data();
        for (std::size_t k = 0; k < sz; ++k) pv[k] *= r[k];
    }
    return {std::move(g), std::move(vHalf)};
}

std::pair<VectorField2, ScalarField> g_step(const SolverState& s, const WeightField& eta,
                                            const SolverParams& prm, SpectralWorkspace& ws) {
    return g_step(s, make_stage_weights(eta, prm.cFrozen), prm, ws);
}

void uv_step(SolverState& s, const VectorField2& pHalf, const ScalarField& vHalf,
             const ScalarField& f, const SolverParams& prm, SpectralWorkspace& ws) {
    ws.solve_uv_system(pHalf, vHalf, f, prm.dt, prm.theta, s.u, s.v);
    s.p = gradient(s.u);
    s.iter += 1;
}

EnergyTerms energy(const ScalarField& u, const VectorField2& g, const ScalarField& f,
                   const WeightField& eta, const SolverParams& prm) {
    const VectorField2 gu = gradient(u);
    const ScalarField dg = divergence(g);

    double tv = 0.0, ge = 0.0, fid = 0.0;
    const double* a = gu.c1.data();
    const double* b = gu.c2.data();
    const double* g1 = g.c1.data();
    const double* g2 = g.c2.data();
    const double* pd = dg.data();
    const double* pu = u.data();
    const double* pf = f.data();
    const double* pe = eta.eta.data();
    const std::size_t n = u.size();
    for (std::size_t k = 0; k < n; ++k) {
        tv += std::sqrt(a[k] * a[k] + b[k] * b[k]);
        ge += g1[k] * g1[k] + g2[k] * g2[k];
        const double r = pu[k] + pd[k] / pe[k] - pf[k];
        fid += r * r;
    }
    EnergyTerms out;
    out.tv = prm.alpha1 * tv;
    out.g = prm.alpha2 * ge;
    out.fid = fid / (2.0 * prm.theta);
    out.total = out.tv + out.g + out.fid;
    return out;
}

StageResult run_stage(const ScalarField& f, const WeightField& eta, const SolverParams& prm,
                      int iters, SpectralWorkspace& ws, int iterOffset, int stage,
                      const IterationObserver* observer) {
    prm.validate();
    if (!eta.eta.same_shape(f))
        throw std::invalid_argument("run_stage: weight field shape differs from image");

    const StageWeights w = make_stage_weights(eta, prm.cFrozen);

    SolverState s;
    s.u = f;
    s.v = ScalarField(f.rows(), f.cols(), 0.0);
    s.g = VectorField2(f.rows(), f.cols(), 0.0);
    s.p = gradient(f);
    s.iter = iterOffset;

    StageResult res;
    res.trace.reserve(iters);
    for (int it = 1; it <= iters; ++it) {
        const VectorField2 pHalf = shrink_p(s.p, prm.dt, prm.alpha1);
        auto [g, vHalf] = g_step(s, w, prm, ws);
        s.g = std::move(g);
        uv_step(s, pHalf, vHalf, f, prm, ws);

        if (!all_finite(s.u) || !all_finite(s.v) || !all_finite(s.g.c1) || !all_finite(s.g.c2))
            throw std::runtime_error(
                "splitting iteration diverged (non-finite sample) at iteration " +
                std::to_string(s.iter) +
                "; the dt/theta/cFrozen combination is unstable for this weight field");

        const EnergyTerms e = energy(s.u, s.g, f, eta, prm);
        res.trace.push_back({s.iter, e.tv, e.g, e.fid, e.total});
        if (observer) (*observer)(s, f, stage);
    }
    res.u = std::move(s.u);
    res.v = std::move(s.v);
    return res;
}

StageResult run_stage(const ScalarField& f, const WeightField& eta, const SolverParams& prm,
                      int iters) {
    SpectralWorkspace ws(f.rows(), f.cols());
    return run_stage(f, eta, prm, iters, ws);
}

DecompositionResult decompose(const ScalarField& f, const TsvParams& tsvPrm,
                              const SolverParams& prm, const DenoiseOptions& denoise,
                              const IterationObserver* observer, int fftThreads) {
    prm.validate();
    tsvPrm.validate();

    SpectralWorkspace ws(f.rows(), f.cols(), fftThreads);

    DecompositionResult res;
    res.vTotal = ScalarField(f.rows(), f.cols(), 0.0);

    ScalarField current = f;
    int done = 0, stage = 0;
    while (done < prm.maxIters) {
        ++stage;
        const int iters = std::min(prm.restartEvery, prm.maxIters - done);

        WeightField eta;
        if (prm.etaMode == EtaMode::Constant) {
            eta = constant_eta(f.rows(), f.cols(), prm.constantEta);
        } else if (stage == 1 && denoise.enabled) {
            // denoised copy feeds only the weight computation
            eta = build_eta(nlm_denoise(current, denoise.patch, denoise.search, denoise.h),
                            tsvPrm);
        } else {
            eta = build_eta(current, tsvPrm);
        }

        StageResult sr = run_stage(current, eta, prm, iters, ws, done, stage, observer);
        done += iters;

        res.etaStages.push_back(std::move(eta));
        res.trace.insert(res.trace.end(), sr.trace.begin(), sr.trace.end());
        {
            double* acc = res.vTotal.data();
            const double* pv = sr.v.data();
            for (std::size_t k = 0; k < res.vTotal.size(); ++k) acc[k] += pv[k];
        }
        current = std::move(sr.u);
    }
    res.u = std::move(current);
    return res;
}

} // namespace tsvdec
