#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "sniplang/errors.hpp"
#include "sniplang/metrics.hpp"

using namespace sniplang;

namespace {

LabelSet labels_ab() {
  LabelSet ls;
  ls.labels = {"A", "B"};
  return ls;
}

LabelSet labels_abc() {
  LabelSet ls;
  ls.labels = {"A", "B", "C"};
  return ls;
}

}  // namespace

TEST_CASE("confusion tabulates gold x predicted") {
  const ConfusionMatrix m =
      confusion({"A", "A", "B"}, {"A", "B", "B"}, labels_ab());
  CHECK(m.labels == std::vector<std::string>{"A", "B"});
  CHECK(m.counts[0][0] == 1);
  CHECK(m.counts[0][1] == 1);
  CHECK(m.counts[1][0] == 0);
  CHECK(m.counts[1][1] == 1);

  SUBCASE("empty lists give an all-zero matrix") {
    const ConfusionMatrix zero = confusion({}, {}, labels_ab());
    CHECK(zero.counts == std::vector<std::vector<std::int64_t>>{{0, 0}, {0, 0}});
  }

  SUBCASE("length mismatch and unknown labels are errors") {
    CHECK_THROWS_AS(confusion({"A"}, {}, labels_ab()), DomainError);
    CHECK_THROWS_AS(confusion({"X"}, {"A"}, labels_ab()), DomainError);
    CHECK_THROWS_AS(confusion({"A"}, {"X"}, labels_ab()), DomainError);
  }
}

TEST_CASE("metrics: the two-class worked example is exact") {
  const EvaluationReport report =
      metrics(confusion({"A", "A", "B"}, {"A", "B", "B"}, labels_ab()));

  CHECK(report.per_class[0].precision == 1.0);
  CHECK(report.per_class[0].recall == 0.5);
  CHECK(report.per_class[0].f1 == 2.0 / 3.0);
  CHECK(report.per_class[1].precision == 0.5);
  CHECK(report.per_class[1].recall == 1.0);
  CHECK(report.per_class[1].f1 == 2.0 / 3.0);
  CHECK(report.accuracy == 2.0 / 3.0);
  CHECK(report.per_class[0].support == 2);
  CHECK(report.per_class[1].support == 1);
  CHECK_FALSE(report.per_class[0].zero_division);

  CHECK(report.macro.precision == doctest::Approx(0.75));
  CHECK(report.macro.recall == doctest::Approx(0.75));
  CHECK(report.macro.f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("perfect predictions score all ones") {
  const EvaluationReport report =
      metrics(confusion({"A", "B", "A"}, {"A", "B", "A"}, labels_ab()));
  CHECK(report.accuracy == 1.0);
  for (const auto& m : report.per_class) {
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);
  }
  CHECK(report.macro.f1 == 1.0);
}

TEST_CASE("a class absent from gold and predictions is zero with a flag") {
  const EvaluationReport report =
      metrics(confusion({"A", "A", "B"}, {"A", "B", "B"}, labels_abc()));
  const ClassMetrics& c = report.per_class[2];
  CHECK(c.label == "C");
  CHECK(c.precision == 0.0);
  CHECK(c.recall == 0.0);
  CHECK(c.f1 == 0.0);
  CHECK(c.support == 0);
  CHECK(c.zero_division);
  // Macro still averages over all 3 classes.
  CHECK(report.macro.recall == doctest::Approx((0.5 + 1.0 + 0.0) / 3.0));
}

TEST_CASE("label-order equivariance: permuting the matrix permutes the report") {
  const std::vector<std::string> gold = {"A", "B", "C", "A", "C", "C"};
  const std::vector<std::string> pred = {"A", "C", "C", "B", "A", "C"};
  LabelSet forward = labels_abc();
  LabelSet reversed;
  reversed.labels = {"C", "B", "A"};

  const EvaluationReport a = metrics(confusion(gold, pred, forward));
  const EvaluationReport b = metrics(confusion(gold, pred, reversed));
  CHECK(a.accuracy == b.accuracy);
  CHECK(a.macro.f1 == doctest::Approx(b.macro.f1));
  for (const auto& ma : a.per_class)
    for (const auto& mb : b.per_class)
      if (ma.label == mb.label) {
        CHECK(ma.precision == mb.precision);
        CHECK(ma.recall == mb.recall);
        CHECK(ma.f1 == mb.f1);
        CHECK(ma.support == mb.support);
      }
}

TEST_CASE("f1 lies between min and max of precision and recall when both positive") {
  const EvaluationReport report = metrics(
      confusion({"A", "A", "A", "B", "B", "C"}, {"A", "A", "B", "B", "C", "C"}, labels_abc()));
  for (const auto& m : report.per_class)
    if (m.precision > 0.0 && m.recall > 0.0) {
      CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-12);
      CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
    }
}

TEST_CASE("text report sorts by descending F1 and echoes the seed") {
  const EvaluationReport report =
      metrics(confusion({"A", "A", "B"}, {"A", "B", "B"}, labels_abc()));
  const std::string text = render_report_text(report, 42);
  CHECK(text.find("seed 42") != std::string::npos);
  CHECK(text.find("accuracy 0.6667") != std::string::npos);
  // A and B tie on F1 (A first by label); C is last with the zero-division mark.
  CHECK(text.find("A") < text.find("C"));
  CHECK(text.find("*") != std::string::npos);
}

TEST_CASE("json report carries the full schema") {
  const EvaluationReport report =
      metrics(confusion({"A", "A", "B"}, {"A", "B", "B"}, labels_ab()));
  const auto doc = nlohmann::json::parse(report_to_json(report, 7));
  CHECK(doc.at("format") == "sniplang.report");
  CHECK(doc.at("seed") == 7);
  CHECK(doc.at("averaging") == "macro");
  CHECK(doc.at("accuracy").get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(doc.at("macro").at("precision").get<double>() == doctest::Approx(0.75));
  CHECK(doc.at("per_class").at("A").at("recall").get<double>() == doctest::Approx(0.5));
  CHECK(doc.at("per_class").at("A").at("support") == 2);
  CHECK(doc.at("per_class").at("A").at("zero_division") == false);
  CHECK(doc.at("matrix").at("labels") == nlohmann::json({"A", "B"}));
  CHECK(doc.at("matrix").at("counts") == nlohmann::json({{1, 1}, {0, 1}}));
}

TEST_CASE("matrix csv renders one gold row per label") {
  const ConfusionMatrix m = confusion({"A", "A", "B"}, {"A", "B", "B"}, labels_ab());
  CHECK(matrix_to_csv(m) == "gold\\predicted,A,B\nA,1,1\nB,0,1\n");
}
