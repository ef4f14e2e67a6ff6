#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "patmine/error.hpp"
#include "patmine/fst.hpp"
#include "patmine/match.hpp"
#include "patmine/mine.hpp"
#include "patmine/pattern.hpp"
#include "patmine/sequence_db.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace patmine;

namespace {

using GidSequence = std::vector<std::string>;

GidSequence to_gids(const Sequence& seq, const Dictionary& dict) {
  GidSequence out;
  out.reserve(seq.size());
  for (ItemId id : seq) out.push_back(dict.gid(id));
  return out;
}

MatchMode mode_of(bool partial) { return partial ? MatchMode::Partial : MatchMode::Full; }

class PyDataset {
 public:
  PyDataset(const std::string& sequences, const std::string& hierarchy)
      : dataset_(load_dataset(sequences, hierarchy)) {}

  std::size_t size() const { return dataset_.db.size(); }

  GidSequence sequence(std::size_t index) const { return to_gids(dataset_.db[checked(index)], dataset_.dict); }

  py::dict stats_dict() const {
    auto s = stats(dataset_.db);
    py::dict d;
    d["sequences"] = s.count;
    d["total_items"] = s.total_items;
    d["max_length"] = s.max_length;
    d["distinct_items"] = s.distinct_items;
    d["avg_length"] = s.average_length;
    return d;
  }

  std::vector<std::pair<std::string, std::uint64_t>> flist() const {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    for (ItemId id = 1; id <= dataset_.dict.size(); ++id) {
      out.emplace_back(dataset_.dict.gid(id), dataset_.dict.frequency(id));
    }
    return out;
  }

  GidSequence ancestors(const std::string& gid) const {
    auto span = dataset_.dict.ancestors(dataset_.dict.id(gid));
    return to_gids(Sequence(span.begin(), span.end()), dataset_.dict);
  }

  GidSequence descendants(const std::string& gid) const {
    auto span = dataset_.dict.descendants(dataset_.dict.id(gid));
    return to_gids(Sequence(span.begin(), span.end()), dataset_.dict);
  }

  py::set generate(const std::string& pattern, std::size_t index, bool partial,
                   std::optional<std::uint64_t> sigma) const {
    const auto& dict = dataset_.dict;
    CFst fst = compile_pattern(pattern, dict, mode_of(partial));
    const auto& seq = dataset_.db[checked(index)];
    auto generated = sigma ? generate_filtered(fst, seq, dict, *sigma, mode_of(partial))
                           : patmine::generate(fst, seq, dict, mode_of(partial));
    py::set out;
    for (const auto& s : generated) out.add(py::tuple(py::cast(to_gids(s, dict))));
    return out;
  }

  py::dict mine(const std::string& pattern, std::uint64_t sigma, const std::string& algorithm,
                bool partial) const {
    auto algo = parse_algorithm(algorithm);
    if (!algo) throw py::value_error("algorithm must be one of naive, count, dfs");
    if (sigma < 1) throw py::value_error("sigma must be >= 1");
    const auto& dict = dataset_.dict;
    CFst fst = compile_pattern(pattern, dict, mode_of(partial));
    MiningOptions options;
    options.mode = mode_of(partial);
    PatternSet result;
    {
      py::gil_scoped_release release;
      result = patmine::mine(*algo, dataset_.db, fst, dict, sigma, options);
    }
    py::dict out;
    for (const auto& [seq, freq] : result) out[py::tuple(py::cast(to_gids(seq, dict)))] = freq;
    return out;
  }

  std::string compile(const std::string& pattern, bool partial, bool dot) const {
    CFst fst = compile_pattern(pattern, dataset_.dict, mode_of(partial));
    return dot ? to_dot(fst, dataset_.dict) : to_text(fst, dataset_.dict);
  }

 private:
  std::size_t checked(std::size_t index) const {
    if (index >= dataset_.db.size()) throw py::index_error("sequence index out of range");
    return index;
  }

  Dataset dataset_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Frequent sequence mining with pattern-expression constraints";

  py::register_exception<PatternError>(m, "PatternError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  m.def("parse", [](const std::string& text) { return to_string(parse_pattern(text)); },
        py::arg("pattern"), "Canonical rendering of a pattern expression.");
  m.def("describe", [](const std::string& text) { return describe(parse_pattern(text)); },
        py::arg("pattern"), "Tree structure of a pattern expression.");

  py::class_<PyDataset>(m, "Dataset")
      .def(py::init<const std::string&, const std::string&>(), py::arg("sequences"),
           py::arg("hierarchy") = "")
      .def("__len__", &PyDataset::size)
      .def("sequence", &PyDataset::sequence, py::arg("index"))
      .def("stats", &PyDataset::stats_dict)
      .def("flist", &PyDataset::flist)
      .def("ancestors", &PyDataset::ancestors, py::arg("item"))
      .def("descendants", &PyDataset::descendants, py::arg("item"))
      .def("generate", &PyDataset::generate, py::arg("pattern"), py::arg("index"),
           py::arg("partial") = false, py::arg("sigma") = std::nullopt)
      .def("mine", &PyDataset::mine, py::arg("pattern"), py::arg("sigma"),
           py::arg("algorithm") = "dfs", py::arg("partial") = false)
      .def("compile", &PyDataset::compile, py::arg("pattern"), py::arg("partial") = false,
           py::arg("dot") = false);

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
