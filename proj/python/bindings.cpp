#include <optional>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hessk/linalg.hpp"
#include "hessk/matform.hpp"
#include "hessk/oracle.hpp"
#include "hessk/scalarform.hpp"
#include "hessk/sympoly.hpp"
#include "hessk/verify.hpp"

namespace py = pybind11;
using namespace hessk;

namespace {

using Rows = std::vector<std::vector<double>>;

DenseMatrix to_matrix(const Rows& rows) { return DenseMatrix::from_rows(rows); }

Rows to_rows(const DenseMatrix& m) {
    Rows out(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

Spectrum to_spectrum(std::vector<double> v) { return Spectrum(std::move(v)); }

AdmissibilityParams make_params(double delta, double mu,
                                const std::optional<GammaSchedule>& sched) {
    return AdmissibilityParams(delta, mu, sched);
}

py::dict ledger_dict(const verify::ConstantsLedger& led) {
    py::dict d;
    d["n"] = led.n;
    d["k"] = led.k;
    d["delta"] = led.delta;
    d["gamma_k"] = led.gamma_k;
    d["c4"] = led.c4;
    d["c6"] = led.c6;
    d["c7"] = led.c7;
    d["c8"] = led.c8;
    d["c9"] = led.c9;
    d["c12"] = led.c12;
    d["mu_k"] = led.mu_k;
    d["gamma_k_uniform"] = led.gamma_k_uniform;
    d["c10"] = led.c10;
    d["c11"] = led.c11;
    d["delta0"] = led.delta0;
    d["delta1"] = led.delta1;
    d["d"] = led.d;
    return d;
}

py::dict report_dict(const verify::VerificationReport& rep) {
    py::dict d;
    d["suite"] = rep.suite;
    d["n"] = rep.n;
    d["k"] = rep.k;
    d["delta"] = rep.delta;
    d["mu"] = rep.mu;
    d["gamma_k"] = rep.gamma_k;
    d["samples"] = rep.samples;
    d["violations"] = rep.violations;
    d["worst_margin"] = rep.worst_margin;
    d["seed"] = rep.seed;
    d["wall_ms"] = rep.wall_ms;
    d["ledger"] = ledger_dict(rep.ledger);
    return d;
}

} // namespace

PYBIND11_MODULE(_hessk, m) {
    m.doc() = "Symmetric-polynomial calculus, log-minor matrix functionals and "
              "their Monte-Carlo concavity certification";

    py::register_exception<Error>(m, "HesskError");

    py::class_<GammaSchedule>(m, "GammaSchedule")
        .def_readonly("n", &GammaSchedule::n)
        .def_readonly("k", &GammaSchedule::k)
        .def_readonly("gamma_k", &GammaSchedule::gamma_k)
        .def_property_readonly(
            "branch", [](const GammaSchedule& s) { return std::string(to_string(s.branch)); })
        .def("__repr__", [](const GammaSchedule& s) {
            return "GammaSchedule(n=" + std::to_string(s.n) + ", k=" + std::to_string(s.k) +
                   ", gamma_k=" + std::to_string(s.gamma_k) + ", branch=" + to_string(s.branch) +
                   ")";
        });

    // dense kernel
    m.def("det_lu", [](const Rows& a) { return det_lu(to_matrix(a)); }, py::arg("a"));
    m.def("invert", [](const Rows& a) { return to_rows(invert(to_matrix(a))); }, py::arg("a"));
    m.def(
        "sym_eigen",
        [](const Rows& a) {
            const SymEigen e = sym_eigen(to_matrix(a));
            return py::make_tuple(e.eigenvalues, to_rows(e.eigenvectors));
        },
        py::arg("a"));
    m.def("skew_spectrum", [](const Rows& b) { return skew_spectrum(to_matrix(b)); }, py::arg("b"));
    m.def("op_norm", [](const Rows& a) { return op_norm(to_matrix(a)); }, py::arg("a"));

    // symmetric polynomials and cones
    m.def(
        "sigma", [](int k, std::vector<double> lam) { return sigma(k, to_spectrum(std::move(lam))); },
        py::arg("k"), py::arg("lam"));
    m.def(
        "sigma_deleted",
        [](int k, std::vector<double> lam, int i) {
            return sigma_deleted(k, to_spectrum(std::move(lam)), i);
        },
        py::arg("k"), py::arg("lam"), py::arg("i"));
    m.def(
        "sigma_deleted2",
        [](int k, std::vector<double> lam, int i, int j) {
            return sigma_deleted2(k, to_spectrum(std::move(lam)), i, j);
        },
        py::arg("k"), py::arg("lam"), py::arg("i"), py::arg("j"));
    m.def(
        "dual_spectrum",
        [](std::vector<double> lam) { return dual_spectrum(to_spectrum(std::move(lam))).values; },
        py::arg("lam"));
    m.def("gamma_schedule", &gamma_schedule, py::arg("n"), py::arg("k"),
          py::arg("free_gamma") = std::nullopt);
    m.def(
        "in_gamma_cone",
        [](std::vector<double> lam, int k) { return in_gamma_cone(to_spectrum(std::move(lam)), k); },
        py::arg("lam"), py::arg("k"));
    m.def(
        "in_sigma_gamma",
        [](std::vector<double> lam, const GammaSchedule& sched) {
            return in_sigma_gamma(to_spectrum(std::move(lam)), sched);
        },
        py::arg("lam"), py::arg("sched"));

    // scalar form
    m.def(
        "f_k", [](int k, std::vector<double> lam) { return f_k(k, to_spectrum(std::move(lam))); },
        py::arg("k"), py::arg("lam"));
    m.def(
        "grad_f_k",
        [](int k, std::vector<double> lam) { return grad_f_k(k, to_spectrum(std::move(lam))); },
        py::arg("k"), py::arg("lam"));
    m.def(
        "hessian_f_k",
        [](int k, std::vector<double> lam) {
            return to_rows(hessian_f_k(k, to_spectrum(std::move(lam))).m);
        },
        py::arg("k"), py::arg("lam"));
    m.def(
        "d2f",
        [](int k, std::vector<double> lam, const std::vector<double>& xi) {
            return d2f(k, to_spectrum(std::move(lam)), xi);
        },
        py::arg("k"), py::arg("lam"), py::arg("xi"));
    m.def(
        "d2f_tilde",
        [](int k, std::vector<double> lam, const std::vector<double>& eta) {
            return d2f_tilde(k, to_spectrum(std::move(lam)), eta);
        },
        py::arg("k"), py::arg("lam"), py::arg("eta"));
    m.def(
        "pair_coeff",
        [](int k, std::vector<double> lam, int i, int j) {
            const PairCoeff pc = pair_coeff(k, to_spectrum(std::move(lam)), i, j);
            py::dict d;
            d["half_form"] = pc.half_form;
            d["full_form"] = pc.full_form;
            d["hessian_implied"] = pc.hessian_implied;
            return d;
        },
        py::arg("k"), py::arg("lam"), py::arg("i"), py::arg("j"));
    m.def(
        "tilde_coeff_matrix",
        [](int k, std::vector<double> lam) {
            return to_rows(tilde_coeff_matrix(k, to_spectrum(std::move(lam))).m);
        },
        py::arg("k"), py::arg("lam"));
    m.def(
        "term_decomposition",
        [](int k, std::vector<double> lam, const std::vector<double>& eta) {
            const TermDecomposition t = term_decomposition(k, to_spectrum(std::move(lam)), eta);
            py::dict d;
            d["a"] = t.a;
            d["b"] = t.b;
            d["c"] = t.c;
            d["e"] = t.e;
            return d;
        },
        py::arg("k"), py::arg("lam"), py::arg("eta"));
    m.def(
        "g_matrix",
        [](int k, std::vector<double> lam) { return to_rows(g_matrix(k, to_spectrum(std::move(lam)))); },
        py::arg("k"), py::arg("lam"));
    m.def(
        "g_matrix_degenerate",
        [](int k, std::vector<double> lam) {
            return g_matrix_degenerate(k, to_spectrum(std::move(lam)));
        },
        py::arg("k"), py::arg("lam"));
    m.def(
        "d2g_k",
        [](int k, std::vector<double> lam, const std::vector<double>& xi) {
            return d2g_k(k, to_spectrum(std::move(lam)), xi);
        },
        py::arg("k"), py::arg("lam"), py::arg("xi"));

    // matrix form
    m.def("S_k", [](const Rows& r, int k) { return S_k(to_matrix(r), k); }, py::arg("r"),
          py::arg("k"));
    m.def("F_k", [](const Rows& r, int k) { return F_k(to_matrix(r), k); }, py::arg("r"),
          py::arg("k"));
    m.def(
        "grad_F_k", [](const Rows& r, int k) { return to_rows(grad_F_k(to_matrix(r), k)); },
        py::arg("r"), py::arg("k"));
    m.def(
        "d2F",
        [](const Rows& r, int k, const Rows& mm) { return d2F(to_matrix(r), k, to_matrix(mm)); },
        py::arg("r"), py::arg("k"), py::arg("m"));
    m.def(
        "split_pq",
        [](const Rows& mm) {
            const auto [p, q] = split_pq(to_matrix(mm));
            return py::make_tuple(to_rows(p), to_rows(q));
        },
        py::arg("m"));
    m.def(
        "cross_term",
        [](const Rows& r, int k, const Rows& p, const Rows& q) {
            const CrossTerm ct = cross_term(to_matrix(r), k, to_matrix(p), to_matrix(q));
            py::dict d;
            d["via_split"] = ct.via_split;
            d["direct"] = ct.direct;
            return d;
        },
        py::arg("r"), py::arg("k"), py::arg("p"), py::arg("q"));
    m.def(
        "conjugate_reduce",
        [](const Rows& r, const Rows& mm) {
            const ConjugateReduced cr =
                conjugate_reduce(AugmentedMatrix::from(to_matrix(r)), to_matrix(mm));
            py::dict d;
            d["r_tilde"] = to_rows(cr.r_tilde.r());
            d["m_tilde"] = to_rows(cr.m_tilde);
            d["basis"] = to_rows(cr.basis);
            d["d"] = cr.d;
            return d;
        },
        py::arg("r"), py::arg("m"));
    m.def(
        "double_tilde",
        [](const std::vector<double>& d, const Rows& x) {
            return to_rows(double_tilde(d, to_matrix(x)));
        },
        py::arg("d"), py::arg("x"));
    m.def(
        "in_admissible",
        [](const Rows& r, double delta, double mu, const std::optional<GammaSchedule>& sched) {
            return in_admissible(AugmentedMatrix::from(to_matrix(r)),
                                 make_params(delta, mu, sched));
        },
        py::arg("r"), py::arg("delta"), py::arg("mu"), py::arg("sched") = std::nullopt);
    m.def(
        "sigma_tilde_diag",
        [](const Rows& rt, int k) {
            const SigmaTildeReport rep = sigma_tilde_diag(AugmentedMatrix::from(to_matrix(rt)), k);
            py::dict d;
            d["max_sigma_norm"] = rep.max_sigma_norm;
            d["max_k_frob"] = rep.max_k_frob;
            return d;
        },
        py::arg("r_tilde"), py::arg("k"));
    m.def(
        "h_factors",
        [](const Rows& rt, int k) {
            const HFactorsReport rep = h_factors(AugmentedMatrix::from(to_matrix(rt)), k);
            py::dict d;
            d["h_k"] = rep.h_k;
            d["min_h"] = rep.min_h;
            d["max_h"] = rep.max_h;
            d["max_abs_g"] = rep.max_abs_g;
            d["max_h_mismatch"] = rep.max_h_mismatch;
            return d;
        },
        py::arg("r_tilde"), py::arg("k"));

    // oracles
    m.def("charpoly_ek", [](const Rows& a) { return oracle::charpoly_ek(to_matrix(a)); },
          py::arg("a"));
    m.def(
        "subset_d2f",
        [](int k, std::vector<double> lam, const std::vector<double>& xi) {
            return oracle::subset_d2f(k, to_spectrum(std::move(lam)), xi);
        },
        py::arg("k"), py::arg("lam"), py::arg("xi"));

    // verification
    m.def(
        "sample_sigma_slice",
        [](const GammaSchedule& sched, std::uint64_t seed) {
            CounterRng rng(seed);
            return verify::sample_sigma_slice(sched, rng).values;
        },
        py::arg("sched"), py::arg("seed"));
    m.def(
        "sample_admissible",
        [](int n, int k, double delta, double mu, const GammaSchedule& sched, std::uint64_t seed) {
            CounterRng rng(seed);
            return to_rows(
                verify::sample_admissible(n, k, make_params(delta, mu, sched), rng).r());
        },
        py::arg("n"), py::arg("k"), py::arg("delta"), py::arg("mu"), py::arg("sched"),
        py::arg("seed"));
    m.def("feasible_mu", &verify::feasible_mu, py::arg("n"), py::arg("sched"), py::arg("delta"));
    m.def(
        "estimate_gamma_uniform",
        [](const GammaSchedule& sched, int budget, std::uint64_t seed) {
            const verify::GammaEstimate est = verify::estimate_gamma_uniform(sched, budget, seed);
            py::dict d;
            d["value"] = est.value;
            d["minimizer"] = est.minimizer;
            return d;
        },
        py::arg("sched"), py::arg("budget"), py::arg("seed"));
    m.def(
        "build_ledger",
        [](int n, int k, double delta, const GammaSchedule& sched, double gamma_uniform) {
            return ledger_dict(verify::build_ledger(n, k, delta, sched, gamma_uniform));
        },
        py::arg("n"), py::arg("k"), py::arg("delta"), py::arg("sched"), py::arg("gamma_uniform"));
    m.def(
        "suite_reduced_bounds",
        [](int n, int k, double delta, double mu, const GammaSchedule& sched, int samples,
           std::uint64_t seed) {
            return report_dict(verify::suite_reduced_bounds(
                n, k, make_params(delta, mu, sched), samples, seed));
        },
        py::arg("n"), py::arg("k"), py::arg("delta"), py::arg("mu"), py::arg("sched"),
        py::arg("samples"), py::arg("seed"));
    m.def(
        "suite_symmetric_definiteness",
        [](const GammaSchedule& sched, double delta, int samples, std::uint64_t seed) {
            return report_dict(
                verify::suite_symmetric_definiteness(sched, delta, samples, seed));
        },
        py::arg("sched"), py::arg("delta"), py::arg("samples"), py::arg("seed"));
    m.def(
        "suite_dconcavity",
        [](const GammaSchedule& sched, double delta, double mu, int pairs, std::uint64_t seed) {
            return report_dict(verify::suite_dconcavity(sched, delta, mu, pairs, seed));
        },
        py::arg("sched"), py::arg("delta"), py::arg("mu"), py::arg("pairs"), py::arg("seed"));
    m.def(
        "suite_ratio_bounds",
        [](const GammaSchedule& sched, int samples, std::uint64_t seed) {
            return report_dict(verify::suite_ratio_bounds(sched, samples, seed));
        },
        py::arg("sched"), py::arg("samples"), py::arg("seed"));
}
