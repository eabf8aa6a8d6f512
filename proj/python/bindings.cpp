#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "esp/bounds.hpp"
#include "esp/codec.hpp"
#include "esp/experiment.hpp"

namespace py = pybind11;
using namespace esp;

namespace {

BitSequence bits_from_bytes(py::bytes data) {
    const std::string_view view = data;
    return BitSequence::from_bytes(
        {reinterpret_cast<const std::uint8_t*>(view.data()), view.size()});
}

py::bytes to_py_bytes(const std::vector<std::uint8_t>& data) {
    return py::bytes(reinterpret_cast<const char*>(data.data()), data.size());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "probability estimation by exponential smoothing: estimator, "
              "redundancy bounds, redundancy experiment and range coder";

    py::register_exception<CodecError>(m, "CodecError", PyExc_ValueError);

    py::class_<BitSequence>(m, "BitSequence")
        .def(py::init<>())
        .def(py::init(&BitSequence::from_string), py::arg("bits"),
             "parse a '0'/'1' string")
        .def_static("zeros", &BitSequence::zeros, py::arg("n"))
        .def_static("from_bytes", &bits_from_bytes, py::arg("data"),
                    "unpack bytes most significant bit first")
        .def("to_bytes",
             [](const BitSequence& x) { return to_py_bytes(x.to_bytes()); })
        .def("__len__", &BitSequence::size)
        .def("__getitem__",
             [](const BitSequence& x, std::size_t i) {
                 if (i >= x.size())
                     throw py::index_error();
                 return x[i];
             })
        .def("__eq__", [](const BitSequence& a, const BitSequence& b) { return a == b; })
        .def("__str__", &BitSequence::to_string)
        .def("push_back", &BitSequence::push_back)
        .def("count_ones", py::overload_cast<>(&BitSequence::count_ones, py::const_))
        .def("complement", &BitSequence::complement);

    py::class_<Partition>(m, "Partition")
        .def(py::init<std::vector<std::uint64_t>>(), py::arg("boundaries"),
             "strictly increasing boundaries 0 = i0 < ... < is = n")
        .def_static("single", &Partition::single, py::arg("n"))
        .def_property_readonly("segments", &Partition::segments)
        .def_property_readonly("length", &Partition::length)
        .def_property_readonly("boundaries", &Partition::boundaries)
        .def("segment", &Partition::segment, py::arg("k"));

    m.def("binary_entropy", &binary_entropy, py::arg("q"));
    m.def("is_deterministic", &is_deterministic, py::arg("x"));
    m.def("empirical_entropy",
          py::overload_cast<const BitSequence&>(&empirical_entropy), py::arg("x"));
    m.def("empirical_entropy",
          py::overload_cast<const BitSequence&, std::size_t, std::size_t>(
              &empirical_entropy),
          py::arg("x"), py::arg("begin"), py::arg("end"));
    m.def("pws_baseline", &pws_baseline, py::arg("x"), py::arg("partition"));
    m.def("entropy_difference", &entropy_difference, py::arg("x"));

    py::enum_<ScheduleKind>(m, "ScheduleKind")
        .value("Fixed", ScheduleKind::Fixed)
        .value("Decaying", ScheduleKind::Decaying)
        .value("Count", ScheduleKind::Count);

    py::class_<SmoothingSchedule>(m, "SmoothingSchedule")
        .def_static("fixed", &SmoothingSchedule::fixed, py::arg("alpha"))
        .def_static("decaying", &SmoothingSchedule::decaying)
        .def_static("count_smoothing", &SmoothingSchedule::count_smoothing,
                    py::arg("lam"), py::arg("m"))
        .def_property_readonly("kind", &SmoothingSchedule::kind)
        .def("rate_at", &SmoothingSchedule::rate_at, py::arg("k"))
        .def("assumption1_satisfied", &SmoothingSchedule::assumption1_satisfied)
        .def_property_readonly("param1", &SmoothingSchedule::param1)
        .def_property_readonly("param2", &SmoothingSchedule::param2);

    m.def("optimal_fixed_alpha", &optimal_fixed_alpha, py::arg("n"));
    m.def("log2_beta_prefix", &log2_beta_prefix, py::arg("schedule"), py::arg("count"));

    py::class_<Estimator>(m, "Estimator")
        .def(py::init<const SmoothingSchedule&, double>(), py::arg("schedule"),
             py::arg("prior_p1") = 0.5)
        .def_property_readonly("p0", &Estimator::p0)
        .def_property_readonly("p1", &Estimator::p1)
        .def("predict", &Estimator::predict, "predicted (p0, p1) for the next letter")
        .def("update", &Estimator::update, py::arg("bit"),
             "code length of the letter in bits; applies the smoothing update")
        .def("process", &Estimator::process, py::arg("x"))
        .def_property_readonly("code_length", &Estimator::code_length)
        .def_property_readonly("steps", &Estimator::steps);

    py::class_<BoundInput>(m, "BoundInput")
        .def(py::init([](std::uint64_t n, std::uint64_t segments, double p_min,
                         double alpha, double lam, std::uint32_t m) {
                 BoundInput in;
                 in.n = n;
                 in.segments = segments;
                 in.p_min = p_min;
                 in.alpha = alpha;
                 in.lambda = lam;
                 in.m = m;
                 return in;
             }),
             py::arg("n"), py::arg("segments") = 1, py::arg("p_min") = 0.5,
             py::arg("alpha") = 0.0, py::arg("lam") = 0.0, py::arg("m") = 1)
        .def_readwrite("n", &BoundInput::n)
        .def_readwrite("segments", &BoundInput::segments)
        .def_readwrite("p_min", &BoundInput::p_min)
        .def_readwrite("alpha", &BoundInput::alpha)
        .def_readwrite("lam", &BoundInput::lambda)
        .def_readwrite("m", &BoundInput::m);

    m.def(
        "redundancy_bound",
        [](const std::vector<double>& log2_betas, std::uint64_t n, double p_top,
           bool deterministic) {
            return redundancy_bound(log2_betas, n, p_top, deterministic);
        },
        py::arg("log2_betas"), py::arg("n"), py::arg("p_top"),
        py::arg("deterministic"));
    m.def(
        "pws_redundancy_bound",
        [](const std::vector<double>& log2_betas, const Partition& partition,
           double p_min) { return pws_redundancy_bound(log2_betas, partition, p_min); },
        py::arg("log2_betas"), py::arg("partition"), py::arg("p_min"));
    m.def("logsum_bound", &logsum_bound, py::arg("alpha"));
    m.def("closed_form_bound", &closed_form_bound, py::arg("kind"), py::arg("input"));
    m.def("optimal_alpha_bound", &optimal_alpha_bound, py::arg("n"),
          py::arg("segments"), py::arg("p_min"));

    py::class_<WorstCaseCandidates>(m, "WorstCaseCandidates")
        .def_readonly("all_same_redundancy", &WorstCaseCandidates::all_same_redundancy)
        .def_readonly("single_flip_redundancy",
                      &WorstCaseCandidates::single_flip_redundancy)
        .def_readonly("argmax", &WorstCaseCandidates::argmax)
        .def_readonly("redundancy", &WorstCaseCandidates::redundancy);
    m.def("worst_case_candidates", &worst_case_candidates, py::arg("schedule"),
          py::arg("prior_p1"), py::arg("n"));

    py::class_<ExhaustiveResult>(m, "ExhaustiveResult")
        .def_readonly("max_redundancy", &ExhaustiveResult::max_redundancy)
        .def_readonly("argmax", &ExhaustiveResult::argmax)
        .def_readonly("max_deterministic", &ExhaustiveResult::max_deterministic)
        .def_readonly("max_nondeterministic",
                      &ExhaustiveResult::max_nondeterministic);
    m.def("exhaustive_worst_case", &exhaustive_worst_case, py::arg("schedule"),
          py::arg("prior_p1"), py::arg("n"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("exhaustive_worst_case_pws", &exhaustive_worst_case_pws, py::arg("schedule"),
          py::arg("prior_p1"), py::arg("partition"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("boundaries", &ExperimentConfig::boundaries)
        .def_readwrite("eps", &ExperimentConfig::eps)
        .def_readwrite("q_grid", &ExperimentConfig::q_grid)
        .def_readwrite("repeats", &ExperimentConfig::repeats)
        .def_readwrite("kind", &ExperimentConfig::kind)
        .def_readwrite("alpha", &ExperimentConfig::alpha)
        .def_readwrite("lam", &ExperimentConfig::lambda)
        .def_readwrite("m", &ExperimentConfig::m)
        .def_readwrite("rng_seed", &ExperimentConfig::rng_seed)
        .def_readwrite("workers", &ExperimentConfig::workers)
        .def_static("default_grid", &ExperimentConfig::default_grid,
                    py::arg("step") = 0.05, py::arg("lo") = 0.05,
                    py::arg("hi") = 0.95)
        .def("total_simulations", &ExperimentConfig::total_simulations)
        .def("validate", &ExperimentConfig::validate);

    py::class_<RedundancyCurve>(m, "RedundancyCurve")
        .def_readonly("r_measured", &RedundancyCurve::r_measured)
        .def_readonly("bound", &RedundancyCurve::bound);
    m.def("run", &run, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("emit_csv", &emit_csv, py::arg("curve"), py::arg("path"));
    m.def("class_bound_at", &class_bound_at, py::arg("kind"), py::arg("k"),
          py::arg("segments"), py::arg("eps"), py::arg("lambda_n") = 0.0);
    m.def(
        "prefix_redundancy_trace",
        [](Estimator& est, const BitSequence& x, const Partition& partition) {
            return prefix_redundancy_trace(est, x, partition);
        },
        py::arg("estimator"), py::arg("x"), py::arg("partition"));

    m.def("quantize_p1", &quantize_p1, py::arg("p1"));
    m.def(
        "encode",
        [](const BitSequence& x, const Estimator& est) {
            const auto result = encode(x, est);
            return py::make_tuple(to_py_bytes(result.bytes),
                                  result.ideal_code_length);
        },
        py::arg("x"), py::arg("estimator"),
        "range-code a bit sequence; returns (container bytes, ideal bits)");
    m.def(
        "decode",
        [](py::bytes data) {
            const std::string_view view = data;
            return decode(
                {reinterpret_cast<const std::uint8_t*>(view.data()), view.size()});
        },
        py::arg("data"));
    m.def(
        "compress_bytes",
        [](py::bytes data, const SmoothingSchedule& sched, double prior_p1) {
            const std::string_view view = data;
            const auto result = compress_bytes(
                {reinterpret_cast<const std::uint8_t*>(view.data()), view.size()},
                sched, prior_p1);
            return py::make_tuple(to_py_bytes(result.bytes),
                                  result.ideal_code_length);
        },
        py::arg("data"), py::arg("schedule"), py::arg("prior_p1") = 0.5);
    m.def(
        "decompress_bytes",
        [](py::bytes data) {
            const std::string_view view = data;
            return to_py_bytes(decompress_bytes(
                {reinterpret_cast<const std::uint8_t*>(view.data()), view.size()}));
        },
        py::arg("data"));
}
