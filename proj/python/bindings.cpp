#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hbundle/cd_pairs.hpp"
#include "hbundle/commands.hpp"
#include "hbundle/gamma_op.hpp"
#include "hbundle/rkhs.hpp"
#include "hbundle/suite.hpp"

namespace py = pybind11;
using namespace hbundle;

namespace {

Direction direction_of(const std::string& s) { return parse_direction(s); }

FiliformSpec make_chain(int n, const std::string& dir, int k0, int m, double lambda, std::vector<cplx> y) {
  FiliformSpec s;
  s.n = n;
  s.direction = direction_of(dir);
  s.k0 = k0;
  s.m = m;
  s.lambda0 = lambda;
  s.y = y.empty() ? std::vector<cplx>(m, 1.0) : std::move(y);
  return s;
}

py::dict constants_dict(const ConstantsTable& t) {
  py::dict d;
  d["c"] = t.c;
  d["affine"] = t.sharp_fit.has_value();
  d["u"] = t.u;
  d["v"] = t.v;
  d["regular"] = t.regular;
  d["cjk"] = t.cjk;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Homogeneous vector bundles on the unit ball: representations, intertwiners and kernels";

  py::register_exception<Error>(m, "HbundleError", PyExc_ValueError);

  m.def("killing", [](const Mat& x, const Mat& y) { return killing(LieElement(x), LieElement(y)); }, py::arg("x"),
        py::arg("y"), "Killing form tr(ad X ad Y) on sl(n+1).");

  m.def("decompose_tensor", &decompose_tensor, py::arg("k"), "Sym powers in p- (x) Sym^k.");
  m.def("cg_projection", [](int k, const std::string& dir) { return cg_projection(k, direction_of(dir)).P; },
        py::arg("k"), py::arg("direction"), "Co-isometry p- (x) Sym^k -> Sym^{k +- 1}.");

  m.def("classify_chains", [](int k0, int m_) { return classify_chains(k0, m_).valid; }, py::arg("k0"),
        py::arg("m"), "Up/down chains from Sym^k0 of length m whose minus parts commute.");

  py::class_<RepRealization>(m, "Representation")
      .def_readonly("n", &RepRealization::n)
      .def_readonly("dim", &RepRealization::dim)
      .def_readonly("rho_minus", &RepRealization::rho_minus)
      .def("with_zero_y", &RepRealization::with_zero_y)
      .def("validate", [](const RepRealization& r) {
        const auto v = validate(r);
        py::dict d;
        d["eq1"] = v.eq1;
        d["commutativity"] = v.commutativity;
        d["grading"] = v.grading;
        d["skew_hermitian"] = v.skew_hermitian;
        d["pass"] = v.pass;
        return d;
      })
      .def("constants", [](const RepRealization& r) { return constants_dict(constants_for(r, StructureContext::make(r.n))); });

  m.def("realize_chain", [](int n, const std::string& dir, int k0, int m_, double lambda, std::vector<cplx> y) {
    return realize(make_chain(n, dir, k0, m_, lambda, std::move(y)));
  }, py::arg("n") = 2, py::arg("direction") = "up", py::arg("k0") = 1, py::arg("m") = 2, py::arg("lam") = -1.3,
     py::arg("y") = std::vector<cplx>{});

  m.def("cjk_table", [](cplx u, cplx v, double lambda, int n, int m_) { return constants_dict(cjk_table(u, v, lambda, n, m_)); },
        py::arg("u"), py::arg("v"), py::arg("lam"), py::arg("n"), py::arg("m"));

  m.def("gamma_matrix", [](const RepRealization& r, int degree) {
    const auto ctx = StructureContext::make(r.n);
    return Mat(build_gamma(r, ctx, constants_for(r, ctx), degree).op.matrix);
  }, py::arg("rep"), py::arg("degree"), "Gamma on polynomial sections of degree <= degree.");

  m.def("intertwining_residual", [](const RepRealization& r, int degree) {
    const auto ctx = StructureContext::make(r.n);
    const auto gamma = build_gamma(r, ctx, constants_for(r, ctx), degree);
    return verify_intertwining(gamma, build_action(r.with_zero_y(), ctx.full_basis(), degree),
                               build_action(r, ctx.full_basis(), degree));
  }, py::arg("rep"), py::arg("degree") = 5);

  m.def("homomorphism_residual", [](const RepRealization& r, int degree) {
    return homomorphism_residual(r, StructureContext::make(r.n), degree);
  }, py::arg("rep"), py::arg("degree") = 4);

  m.def("kernel", [](int n, int sym, double lambda, const Vec& z, const Vec& w) {
    return KernelFunction{n, {lambda, sym}, lambda}.eval(z, w);
  }, py::arg("n"), py::arg("sym"), py::arg("lam"), py::arg("z"), py::arg("w"), "Invariant kernel K(z, w).");

  m.def("gram", [](int n, int sym, double lambda, int degree) {
    const auto g = gram_from_kernel(KernelFunction{n, {lambda, sym}, lambda}, degree);
    py::dict d;
    d["gram"] = g.gram;
    d["positive"] = g.positive;
    d["min_eig"] = g.min_eig;
    return d;
  }, py::arg("n"), py::arg("sym"), py::arg("lam"), py::arg("degree"));

  m.def("threshold_scan", [](int n, int sym, const std::vector<double>& lambdas, int degree) {
    const auto s = probe_lambda_threshold(n, sym, lambdas, degree);
    py::dict d;
    d["positive"] = s.positive;
    d["monotone"] = s.monotone;
    d["bracket"] = s.bracket ? py::cast(*s.bracket) : py::none();
    return d;
  }, py::arg("n"), py::arg("sym"), py::arg("lambdas"), py::arg("degree") = 8);

  m.def("joint_kernel_dim", [](const RepRealization& r, const Vec& w, int degree) {
    const auto ctx = StructureContext::make(r.n);
    const auto g0 = gram_from_kernel(r, degree);
    const Mat gy = pushforward_gram(g0.gram, build_gamma(r, ctx, constants_for(r, ctx), degree));
    return joint_kernel_dim(build_pair(gy, SectionSpace(r.n, r.dim, degree)), w).dimension;
  }, py::arg("rep"), py::arg("w"), py::arg("degree") = 8);

  m.def("suite_report", [](py::object config_json) {
    SuiteConfig cfg;
    if (!config_json.is_none()) cfg = suite_config_from_json(Json::parse(config_json.cast<std::string>()));
    return dump(cmd_suite(cfg).report.to_json());
  }, py::arg("config_json") = py::none(), "Runs the full battery and returns the JSON report.");
}
