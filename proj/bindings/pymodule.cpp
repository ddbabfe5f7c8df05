#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "valleys/baselines.hpp"
#include "valleys/evalkit.hpp"
#include "valleys/experiment.hpp"
#include "valleys/headmap.hpp"
#include "valleys/io.hpp"
#include "valleys/learner.hpp"
#include "valleys/rng.hpp"
#include "valleys/synthdata.hpp"

namespace py = pybind11;
using namespace valleys;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Valley-seeking hyperplane classifier: streaming unsupervised "
            "training of a discriminative hyperplane pool.";

  py::class_<LearnerConfig>(m, "LearnerConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &LearnerConfig::epsilon)
      .def_readwrite("phi", &LearnerConfig::phi)
      .def_readwrite("alpha", &LearnerConfig::alpha)
      .def_readwrite("beta", &LearnerConfig::beta)
      .def_readwrite("warmup_shifts", &LearnerConfig::warmup_shifts)
      .def_readwrite("rng_seed", &LearnerConfig::rng_seed)
      .def_readwrite("decay", &LearnerConfig::decay)
      .def_readwrite("decay_horizon", &LearnerConfig::decay_horizon);

  py::class_<DomainBox>(m, "DomainBox")
      .def(py::init([](const Vec& lo, const Vec& hi) {
             DomainBox box{lo, hi};
             box.validate();
             return box;
           }),
           py::arg("lo"), py::arg("hi"))
      .def_readonly("lo", &DomainBox::lo)
      .def_readonly("hi", &DomainBox::hi);

  py::class_<Hyperplane>(m, "Hyperplane")
      .def_readonly("w", &Hyperplane::w)
      .def_readonly("theta", &Hyperplane::theta)
      .def_readonly("timer", &Hyperplane::timer)
      .def_readonly("shift_count", &Hyperplane::shift_count)
      .def_readonly("has_means", &Hyperplane::has_means)
      .def_readonly("mu1", &Hyperplane::mu1)
      .def_readonly("mu2", &Hyperplane::mu2)
      .def_readonly("c1", &Hyperplane::c1)
      .def_readonly("c2", &Hyperplane::c2)
      .def_readonly("id", &Hyperplane::id);

  py::class_<PoolDiagnostics>(m, "PoolDiagnostics")
      .def_readonly("samples_processed", &PoolDiagnostics::samples_processed)
      .def_readonly("shifts_fired", &PoolDiagnostics::shifts_fired)
      .def_readonly("rotations_fired", &PoolDiagnostics::rotations_fired)
      .def_readonly("rotation_attempts", &PoolDiagnostics::rotation_attempts)
      .def_readonly("degenerate_skips", &PoolDiagnostics::degenerate_skips)
      .def_readonly("band_hits", &PoolDiagnostics::band_hits)
      .def_readonly("mean_updates", &PoolDiagnostics::mean_updates);

  py::class_<Pool>(m, "Pool")
      .def_readonly("dim", &Pool::dim)
      .def_readonly("config", &Pool::config)
      .def_readonly("planes", &Pool::planes)
      .def_readonly("diag", &Pool::diag)
      .def("__len__", [](const Pool& p) { return p.size(); });

  py::class_<MixtureComponent>(m, "MixtureComponent")
      .def(py::init([](double prior, const Vec& mean, double sigma, int label) {
             return MixtureComponent{prior, mean, sigma, label};
           }),
           py::arg("prior"), py::arg("mean"), py::arg("sigma"),
           py::arg("class_label"))
      .def_readwrite("prior", &MixtureComponent::prior)
      .def_readwrite("mean", &MixtureComponent::mean)
      .def_readwrite("sigma", &MixtureComponent::sigma)
      .def_readwrite("class_label", &MixtureComponent::class_label);

  py::class_<MixtureSpec>(m, "MixtureSpec")
      .def(py::init<>())
      .def_readwrite("components", &MixtureSpec::components)
      .def("validate", &MixtureSpec::validate);

  py::class_<LabeledSample>(m, "LabeledSample")
      .def(py::init([](const Vec& x, int label) {
             return LabeledSample{x, label};
           }),
           py::arg("x"), py::arg("label"))
      .def_readwrite("x", &LabeledSample::x)
      .def_readwrite("label", &LabeledSample::label);

  py::class_<ClassHead>(m, "ClassHead")
      .def_readonly("class_label", &ClassHead::class_label)
      .def_readonly("plane_id", &ClassHead::plane_id)
      .def_readonly("polarity", &ClassHead::polarity)
      .def_readonly("score", &ClassHead::score);

  py::class_<HeadSet>(m, "HeadSet").def_readonly("heads", &HeadSet::heads);

  m.attr("TWO_PAIR_DELTA") = kTwoPairDelta;
  m.attr("RNG_ALGORITHM") = Rng::kAlgorithm;

  m.def("init_grid", &init_grid, py::arg("domain"), py::arg("planes_per_dim"),
        py::arg("config"));
  m.def("init_random", &init_random, py::arg("domain"), py::arg("count"),
        py::arg("seed"), py::arg("config"));
  m.def("output_code", &output_code, py::arg("pool"), py::arg("x"));
  m.def("step", &step, py::arg("pool"), py::arg("x"));
  m.def(
      "train",
      [](Pool& pool, const std::vector<Vec>& stream) {
        train(pool, stream, {0, nullptr});
      },
      py::arg("pool"), py::arg("stream"));

  m.def("two_pair_2d", &two_pair_2d, py::arg("sigma") = 1.0);
  m.def("two_pair_50d", &two_pair_50d, py::arg("sigma") = 1.0);
  m.def("two_pair_nd", &two_pair_nd, py::arg("d"), py::arg("sigma") = 1.0);
  m.def("skewed_four_class", &skewed_four_class, py::arg("d"),
        py::arg("sigma") = 1.0);
  m.def("benchmark_domain", &benchmark_domain, py::arg("d"),
        py::arg("sigma") = 1.0);
  m.def("gen_mixture", &gen_mixture, py::arg("spec"), py::arg("n"),
        py::arg("seed"));
  m.def("bayes_error_mc", &bayes_error_mc, py::arg("spec"), py::arg("n_mc"),
        py::arg("seed"));

  py::enum_<AssociationScoring>(m, "AssociationScoring")
      .value("BALANCED", AssociationScoring::kBalanced)
      .value("RAW_COUNTS", AssociationScoring::kRawCounts);
  m.def("associate_labels", &associate_labels, py::arg("pool"),
        py::arg("calib"),
        py::arg("scoring") = AssociationScoring::kBalanced);
  m.def("classify_topn", &classify_topn, py::arg("heads"), py::arg("pool"),
        py::arg("x"), py::arg("n"));
  m.def("topn_error", &topn_error, py::arg("predictions"), py::arg("truths"),
        py::arg("n"));
  m.def("probe_pool", &probe_pool, py::arg("pool"), py::arg("calib"),
        py::arg("test"), py::arg("ns"));

  py::class_<KnnModel>(m, "KnnModel")
      .def(py::init([](const std::vector<LabeledSample>& points, int k) {
             KnnModel model{points, k};
             model.validate();
             return model;
           }),
           py::arg("points"), py::arg("k") = 5);
  m.def("knn_classify", &knn_classify, py::arg("model"), py::arg("x"),
        py::arg("n"));

  py::class_<KmeansModel>(m, "KmeansModel")
      .def_readonly("centroids", &KmeansModel::centroids)
      .def_readonly("k", &KmeansModel::k)
      .def_readonly("inertia", &KmeansModel::inertia)
      .def_readonly("converged", &KmeansModel::converged);
  m.def("kmeans_fit", &kmeans_fit, py::arg("xs"), py::arg("k"),
        py::arg("max_iters") = 200, py::arg("seed") = 0);

  m.def("pool_to_json", &pool_to_json, py::arg("pool"));
  m.def("pool_from_json", &pool_from_json, py::arg("text"));
  m.def("save_pool", &save_pool, py::arg("path"), py::arg("pool"));
  m.def("load_pool", &load_pool, py::arg("path"));
}
