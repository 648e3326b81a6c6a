// Python bindings for the tweetscope core.

#include "tweetscope/affect.hpp"
#include "tweetscope/aggregate.hpp"
#include "tweetscope/artifacts.hpp"
#include "tweetscope/controversy.hpp"
#include "tweetscope/error.hpp"
#include "tweetscope/ingest.hpp"
#include "tweetscope/lexicon.hpp"
#include "tweetscope/pipeline.hpp"
#include "tweetscope/synth.hpp"
#include "tweetscope/text.hpp"
#include "tweetscope/topics.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace tweetscope;

namespace {

std::vector<std::vector<double>> to_rows(const Matrix<double>& m) {
    std::vector<std::vector<double>> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out[r].assign(m.row(r).begin(), m.row(r).end());
    return out;
}

py::dict emotion_dict(const std::array<double, kNumEmotions>& values) {
    py::dict d;
    for (std::size_t e = 0; e < kNumEmotions; ++e) d[py::str(std::string(kEmotionNames[e]))] = values[e];
    return d;
}

}  // namespace

PYBIND11_MODULE(_tweetscope, m) {
    m.doc() = "Tweet sentiment, emotion, topic and controversy analytics";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto data_error = py::register_exception<DataError>(m, "DataError", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    // most specific first: pybind11 tries translators in reverse registration order
    py::register_exception<FileNotFound>(m, "FileNotFound", data_error.ptr());
    py::register_exception<MalformedLexicon>(m, "MalformedLexicon", data_error.ptr());
    py::register_exception<MalformedRecord>(m, "MalformedRecord", data_error.ptr());
    py::register_exception<EmptyCorpus>(m, "EmptyCorpus", data_error.ptr());
    py::register_exception<EmptyVocabulary>(m, "EmptyVocabulary", data_error.ptr());

    m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));
    m.def("porter_stem", [](const std::string& token) { return porter_stem(token); }, py::arg("token"));
    m.def("emotion_names", [] {
        std::vector<std::string> out(kEmotionNames.begin(), kEmotionNames.end());
        return out;
    });

    py::class_<SentimentLexicon>(m, "SentimentLexicon")
        .def("__len__", &SentimentLexicon::size)
        .def("get", [](const SentimentLexicon& l, const std::string& t) { return l.find(t); })
        .def("__contains__", [](const SentimentLexicon& l, const std::string& t) { return l.find(t).has_value(); });
    py::class_<EmotionLexicon>(m, "EmotionLexicon")
        .def("__len__", &EmotionLexicon::size)
        .def("__contains__", &EmotionLexicon::contains)
        .def("emotions", [](const EmotionLexicon& l, const std::string& w) {
            std::vector<std::string> out;
            const EmotionSet s = l.emotions(w);
            for (std::size_t e = 0; e < kNumEmotions; ++e)
                if (s.test(e)) out.emplace_back(kEmotionNames[e]);
            return out;
        });
    m.def("load_afinn", &load_afinn, py::arg("path"));
    m.def("load_nrc", &load_nrc, py::arg("path"));

    py::class_<SentimentScore>(m, "SentimentScore")
        .def_readonly("sum", &SentimentScore::sum)
        .def_readonly("mean", &SentimentScore::mean)
        .def_readonly("positivity", &SentimentScore::positivity)
        .def_readonly("negativity", &SentimentScore::negativity)
        .def_readonly("matched", &SentimentScore::matched);
    py::class_<EmotionVector>(m, "EmotionVector")
        .def_property_readonly("counts", [](const EmotionVector& v) {
            py::dict d;
            for (std::size_t e = 0; e < kNumEmotions; ++e) d[py::str(std::string(kEmotionNames[e]))] = v.counts[e];
            return d;
        })
        .def_property_readonly("normalized", [](const EmotionVector& v) { return emotion_dict(v.normalized); })
        .def("total", &EmotionVector::total);
    m.def("score_sentiment", [](const std::vector<std::string>& t, const SentimentLexicon& l) {
        return score_sentiment(t, l);
    }, py::arg("tokens"), py::arg("lexicon"));
    m.def("score_emotions", [](const std::vector<std::string>& t, const EmotionLexicon& l) {
        return score_emotions(t, l);
    }, py::arg("tokens"), py::arg("lexicon"));

    py::class_<LdaConfig>(m, "LdaConfig")
        .def(py::init([](std::size_t k, std::optional<double> alpha, double beta, std::size_t iterations,
                         std::uint64_t seed, std::size_t burn_in) {
                 LdaConfig c = LdaConfig::with_topics(k);
                 if (alpha) c.alpha = *alpha;
                 c.beta = beta;
                 c.iterations = iterations;
                 c.seed = seed;
                 c.burn_in = burn_in;
                 c.validate();
                 return c;
             }),
             py::arg("num_topics") = 10, py::arg("alpha") = py::none(), py::arg("beta") = 0.01,
             py::arg("iterations") = 1000, py::arg("seed") = 42, py::arg("burn_in") = 100)
        .def_readonly("num_topics", &LdaConfig::num_topics)
        .def_readonly("alpha", &LdaConfig::alpha)
        .def_readonly("beta", &LdaConfig::beta)
        .def_readonly("iterations", &LdaConfig::iterations)
        .def_readonly("seed", &LdaConfig::seed)
        .def_readonly("burn_in", &LdaConfig::burn_in);

    py::class_<LdaModel>(m, "LdaModel")
        .def_property_readonly("vocabulary", [](const LdaModel& lm) { return lm.vocab.terms; })
        .def_property_readonly("num_topics", &LdaModel::num_topics)
        .def_property_readonly("theta", [](const LdaModel& lm) { return to_rows(lm.theta); })
        .def_property_readonly("phi", [](const LdaModel& lm) { return to_rows(lm.phi); })
        .def_readonly("assignments", &LdaModel::z)
        .def("top_words", &top_words, py::arg("topic"), py::arg("n"));
    m.def("fit_lda", [](const TokenDocs& docs, const LdaConfig& c) { return fit_lda(docs, c); },
          py::arg("docs"), py::arg("config"), py::call_guard<py::gil_scoped_release>());

    py::class_<TermList>(m, "TermList")
        .def(py::init<std::vector<std::string>>(), py::arg("phrases"))
        .def_property_readonly("phrases", &TermList::phrases);
    m.def("load_term_list", &load_term_list, py::arg("path"));
    m.def("match_terms", [](const std::vector<std::string>& t, const TermList& terms) {
        return match_terms(t, terms);
    }, py::arg("tokens"), py::arg("terms"));
    m.def("country_breakdown", [](const std::vector<std::optional<std::string>>& countries) {
        std::vector<ControversyHit> hits(countries.size());
        for (std::size_t i = 0; i < countries.size(); ++i) hits[i].country = countries[i];
        const CountryBreakdown b = country_breakdown(hits);
        return py::make_tuple(b.counts, b.fractions);
    }, py::arg("countries"), "Breakdown over hit countries (None = unknown): (counts, fractions).");

    // pipeline stages
    m.def("default_resource_dir", [] { return ResourcePaths::defaults().afinn.parent_path().parent_path(); });
    m.def("synth", [](const std::filesystem::path& out, std::size_t count, std::uint64_t seed) {
        SynthOptions o;
        o.num_tweets = count;
        o.seed = seed;
        write_synthetic_tweets(out, o);
    }, py::arg("out"), py::arg("count") = 2000, py::arg("seed") = 42);
    m.def("ingest", [](const std::filesystem::path& input, const std::filesystem::path& out, bool fail_fast) {
        RunManifest man;
        {
            py::gil_scoped_release release;
            man = run_ingest(input, out, ResourcePaths::defaults(),
                             fail_fast ? Strictness::FailFast : Strictness::SkipMalformed);
        }
        return py::dict(py::arg("loaded") = man.counts->loaded, py::arg("skipped") = man.counts->skipped,
                        py::arg("filtered") = man.counts->filtered);
    }, py::arg("input"), py::arg("out"), py::arg("fail_fast") = false);
    m.def("analyze", [](const std::filesystem::path& dir) { run_analyze(dir, ResourcePaths::defaults()); },
          py::arg("dir"), py::call_guard<py::gil_scoped_release>());
    m.def("topics", [](const std::filesystem::path& dir, const LdaConfig& c, std::size_t n_words) {
        TopicsOptions o;
        o.config = c;
        o.n_words = n_words;
        run_topics(dir, o);
    }, py::arg("dir"), py::arg("config") = LdaConfig::with_topics(10), py::arg("n_words") = 50,
          py::call_guard<py::gil_scoped_release>());
    m.def("controversy", [](const std::filesystem::path& dir) { run_controversy(dir, ResourcePaths::defaults()); },
          py::arg("dir"), py::call_guard<py::gil_scoped_release>());
    m.def("export_csv", [](const std::filesystem::path& dir, const std::string& metric, const std::string& granularity,
                           std::optional<std::string> from, std::optional<std::string> to,
                           std::optional<std::string> country) {
        const auto mt = parse_metric(metric);
        const auto g = parse_granularity(granularity);
        if (!mt || !g) throw InvalidArgument("unknown metric or granularity");
        return series_csv(load_series(dir, *mt, *g, from, to, country));
    }, py::arg("dir"), py::arg("metric"), py::arg("granularity") = "week", py::arg("from_") = py::none(),
          py::arg("to") = py::none(), py::arg("country") = py::none());
}
