#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tsvdec/field.hpp"
#include "tsvdec/spectral.hpp"
#include "tsvdec/tsv.hpp"

namespace tsvdec {

enum class EtaMode { Tsv, Constant };

struct SolverParams {
    double alpha1 = 0.03; ///< total-variation weight
    double alpha2 = 0.3;  ///< quadratic g-energy weight
    double theta = 1e-6;  ///< fidelity penalty; small theta enforces u + v ~ f
    double dt = 0.08;     ///< splitting time step
    double cFrozen = 1.0; ///< frozen coefficient of the g-solve
    int maxIters = 2000;
    int restartEvery = 400;
    EtaMode etaMode = EtaMode::Tsv;
    double constantEta = 1.0;

    /// Effective texture/structure tradeoff of the penalized model.
    double lambda() const { return alpha2 / alpha1; }

    void validate() const {
        if (alpha1 <= 0 || alpha2 <= 0 || theta <= 0 || dt <= 0 || cFrozen <= 0)
            throw std::invalid_argument("SolverParams: weights, theta, dt, cFrozen must be positive");
        if (maxIters < 1 || restartEvery < 1)
            throw std::invalid_argument("SolverParams: iteration counts must be positive");
        if (restartEvery > maxIters)
            throw std::invalid_argument("SolverParams: restartEvery must not exceed maxIters");
        if (etaMode == EtaMode::Constant && constantEta <= 0)
            throw std::invalid_argument("SolverParams: constantEta must be positive");
    }
};

struct SolverState {
    ScalarField u, v;
    VectorField2 g, p;
    int iter = 0;
};

struct EnergyRecord {
    int iter;
    double tv, g, fid, total;
};
using EnergyTrace = std::vector<EnergyRecord>;

struct EnergyTerms {
    double tv, g, fid, total;
};

/// Called after every completed iteration of a stage.
using IterationObserver =
    std::function<void(const SolverState& state, const ScalarField& stageInput, int stage)>;

/// Isotropic soft shrinkage of the 2-vector field by threshold dt*alpha1:
/// p <- max(0, 1 - dt*alpha1/|p|) p, with |p| the pixelwise Euclidean norm
/// (p = 0 maps to 0).
VectorField2 shrink_p(const VectorField2& p, double dt, double alpha1);

/// Reciprocal weight maps and the effective frozen coefficient, computed
/// once per stage.
///
/// The implicit g-solve freezes the variable coefficient 1/eta^2 at
/// cEff = cFrozen * max(1/eta^2) = cFrozen / min(eta)^2. Freezing at the
/// coefficient's maximum keeps the lagged term (cEff - 1/eta^2) div(g)
/// nonnegative-definite, which makes the two-substep iteration stable for
/// any weight field; a plain constant c below max(1/eta^2)/2 is amplified
/// by high-frequency divergence modes wherever eta is small (growth factor
/// up to (q - c) * 8 / (1 + 2 dt alpha2 + 8 c) per iteration, q = 1/eta^2).
/// For a constant unit weight cEff reduces to cFrozen exactly.
struct StageWeights {
    ScalarField invEta;  ///< 1/eta
    ScalarField invEta2; ///< 1/eta^2
    double cEff = 1.0;   ///< cFrozen / min(eta)^2
};

StageWeights make_stage_weights(const WeightField& eta, double cFrozen);

/// One implicit g-update: assembles
///   b_k = g_k - d_k+((cFrozen - 1/eta^2) div g) - d_k+((1/eta) v),  k = 1,2
/// solves the constant-coefficient system, and returns the updated g together
/// with vHalf = (1/eta) div g.
std::pair<VectorField2, ScalarField> g_step(const SolverState& s, const StageWeights& w,
                                            const SolverParams& prm, SpectralWorkspace& ws);
std::pair<VectorField2, ScalarField> g_step(const SolverState& s, const WeightField& eta,
                                            const SolverParams& prm, SpectralWorkspace& ws);

/// Coupled (u, v) update followed by p = grad(u); g is carried unchanged.
/// Increments the iteration counter.
void uv_step(SolverState& s, const VectorField2& pHalf, const ScalarField& vHalf,
             const ScalarField& f, const SolverParams& prm, SpectralWorkspace& ws);

/// Energy of the penalized model:
///   alpha1 * sum |grad u| + alpha2 * sum |g|^2
///   + 1/(2 theta) * sum (u + (1/eta) div g - f)^2.
EnergyTerms energy(const ScalarField& u, const VectorField2& g, const ScalarField& f,
                   const WeightField& eta, const SolverParams& prm);

struct StageResult {
    ScalarField u, v;
    EnergyTrace trace;
};

/// Runs `iters` iterations of the two-substep splitting on a fixed weight
/// field, starting from u = f, p = grad(f), g = 0, v = 0. Throws
/// std::runtime_error with a diagnostic if any field develops a non-finite
/// sample (an unstable parameter combination).
StageResult run_stage(const ScalarField& f, const WeightField& eta, const SolverParams& prm,
                      int iters, SpectralWorkspace& ws, int iterOffset = 0, int stage = 1,
                      const IterationObserver* observer = nullptr);

/// Convenience overload owning a private workspace.
StageResult run_stage(const ScalarField& f, const WeightField& eta, const SolverParams& prm,
                      int iters);

struct DenoiseOptions {
    bool enabled = false;
    int patch = 5;
    int search = 11;
    double h = 10.0 / 255.0;
};

struct DecompositionResult {
    ScalarField u;      ///< final structure component
    ScalarField vTotal; ///< texture accumulated over all stages
    std::vector<WeightField> etaStages;
    EnergyTrace trace;
};

/// Full decomposition with restarts: every `restartEvery` iterations the
/// stage output becomes the next stage input and the weight field is rebuilt
/// from it; texture accumulates across stages. If maxIters is not a multiple
/// of restartEvery the final stage runs the remainder. When denoising is
/// enabled it affects only the stage-1 weight computation, never the data
/// being decomposed.
DecompositionResult decompose(const ScalarField& f, const TsvParams& tsvPrm,
                              const SolverParams& prm, const DenoiseOptions& denoise = {},
                              const IterationObserver* observer = nullptr, int fftThreads = 1);

} // namespace tsvdec
