#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pcadist/dataio.hpp>
#include <pcadist/report_io.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using namespace pcadist;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content = "") : path(name) {
        if (!content.empty()) {
            std::ofstream out(path, std::ios::binary);
            out << content;
        }
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("load_csv splits complete rows from tasks") {
    TempFile file("dataio_basic.csv", "x,y\n1,2\n2,4\n3,\n");
    const Dataset dataset = load_csv(file.path);
    CHECK(dataset.column_names == std::vector<std::string>{"x", "y"});
    CHECK(dataset.rows() == 3);
    CHECK(dataset.complete_row_indices() == std::vector<Eigen::Index>{0, 1});
    CHECK(dataset.incomplete_row_indices() == std::vector<Eigen::Index>{2});

    const DataMatrix complete = dataset.complete_matrix();
    CHECK(complete.rows() == 2);
    CHECK(complete.values(1, 1) == 4.0);

    const PredictionTask task = dataset.task_for_row(2);
    CHECK(task.missing_indices == std::vector<Eigen::Index>{1});
    CHECK(task.known_values.at(0) == 3.0);
}

TEST_CASE("missing markers are honored") {
    TempFile file("dataio_na.csv", "a,b\nNA,1\n2,3\n");
    CsvOptions options;
    options.missing_markers = {"NA"};
    const Dataset dataset = load_csv(file.path, options);
    CHECK(dataset.missing[0][0]);
    CHECK_FALSE(dataset.missing[0][1]);
}

TEST_CASE("parse errors name the cell") {
    TempFile file("dataio_bad.csv", "x,y\n1,abc\n2,4\n");
    CHECK_THROWS_WITH_AS(load_csv(file.path), doctest::Contains("row 1"), std::runtime_error);
    try {
        load_csv(file.path);
    } catch (const std::runtime_error& e) {
        const std::string message = e.what();
        CHECK(message.find("\"y\"") != std::string::npos);
        CHECK(message.find("abc") != std::string::npos);
    }
}

TEST_CASE("ragged and degenerate files are rejected") {
    TempFile ragged("dataio_ragged.csv", "x,y\n1,2\n3\n");
    CHECK_THROWS_WITH_AS(load_csv(ragged.path), doctest::Contains("fields"), std::runtime_error);

    TempFile all_missing("dataio_allmissing.csv", "x,y\n1,2\n,\n");
    CHECK_THROWS_WITH_AS(load_csv(all_missing.path), doctest::Contains("no known values"),
                         std::runtime_error);

    TempFile no_complete("dataio_nocomplete.csv", "x,y\n1,\n,2\n");
    CHECK_THROWS_WITH_AS(load_csv(no_complete.path), doctest::Contains("no complete rows"),
                         std::runtime_error);

    CHECK_THROWS_WITH_AS(load_csv("dataio_does_not_exist.csv"), doctest::Contains("cannot open"),
                         std::runtime_error);

    TempFile inf_cell("dataio_inf.csv", "x,y\n1,inf\n");
    CHECK_THROWS_WITH_AS(load_csv(inf_cell.path), doctest::Contains("finite"),
                         std::runtime_error);
}

TEST_CASE("quoted fields, CRLF and delimiters") {
    TempFile file("dataio_quotes.csv", "\"a,1\";b\r\n1;2\r\n\"3\";4\r\n");
    CsvOptions options;
    options.delimiter = ';';
    const Dataset dataset = load_csv(file.path, options);
    CHECK(dataset.column_names.front() == "a,1");
    CHECK(dataset.values(1, 0) == 3.0);
}

TEST_CASE("round-trip preserves values to 12 significant digits") {
    TempFile file("dataio_roundtrip.csv",
                  "x,y\n0.123456789012,2e-7\n-1.5,3.25\n1234567.25,-0.0625\n");
    const Dataset dataset = load_csv(file.path);

    TempFile out("dataio_roundtrip_out.csv");
    write_imputed(dataset, {}, out.path, "");
    const Dataset back = load_csv(out.path);
    REQUIRE(back.rows() == dataset.rows());
    for (Eigen::Index i = 0; i < dataset.rows(); ++i) {
        for (Eigen::Index j = 0; j < dataset.cols(); ++j) {
            const double a = dataset.values(i, j);
            const double b = back.values(i, j);
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("imputed cells are filled and flagged in the sidecar") {
    TempFile file("dataio_impute.csv", "x,y\n1,2\n2,4\n4,\n");
    const Dataset dataset = load_csv(file.path);

    RowPrediction rp;
    rp.row = 2;
    rp.result.imputed[1] = 8.0;
    rp.result.t_pred = Eigen::VectorXd::Zero(1);
    rp.result.distance = 0.0;
    rp.result.unique = true;

    TempFile out("dataio_impute_out.csv");
    TempFile report("dataio_impute_out.report.json");
    write_imputed(dataset, {rp}, out.path, report.path);

    const Dataset back = load_csv(out.path);
    CHECK(back.values(2, 1) == 8.0);
    CHECK(back.values(2, 0) == 4.0);
    // Untouched cells keep their values.
    CHECK(back.values(0, 0) == 1.0);
    CHECK(back.values(1, 1) == 4.0);

    const std::string sidecar = slurp(report.path);
    CHECK(sidecar.find("\"distance\"") != std::string::npos);
    CHECK(sidecar.find("\"unique\"") != std::string::npos);
    CHECK(sidecar.find("\"distance_invariant\"") != std::string::npos);
}

TEST_CASE("write_imputed demands a result per incomplete row") {
    TempFile file("dataio_missing_result.csv", "x,y\n1,2\n2,\n");
    const Dataset dataset = load_csv(file.path);
    CHECK_THROWS_WITH_AS(write_imputed(dataset, {}, "unused.csv", ""),
                         doctest::Contains("no prediction"), std::invalid_argument);
}

TEST_CASE("distance_invariant flag reaches the report") {
    TempFile file("dataio_flag.csv", "x,y\n1,2\n2,4\n,3\n");
    const Dataset dataset = load_csv(file.path);
    RowPrediction rp;
    rp.row = 2;
    rp.result.imputed[0] = 1.5;
    rp.result.t_pred = Eigen::VectorXd::Zero(1);
    rp.result.distance_invariant = true;

    const nlohmann::json doc = imputation_report(dataset, {rp});
    CHECK(doc["rows"][0]["distance_invariant"] == true);
    CHECK(doc["rows"][0]["imputed"]["x"] == 1.5);
}

TEST_CASE("format_number trims and round-trips") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(1.25) == "1.25");
    CHECK(format_number(-0.5) == "-0.5");
    CHECK(format_number(0.0) == "0");
    const double value = 0.12345678901234567;
    const double parsed = std::stod(format_number(value));
    // 12 significant digits: relative error at most half an ulp of the 12th.
    CHECK(std::abs(parsed - value) <= 5e-12 * std::abs(value));
}

TEST_CASE("headerless files get default column names") {
    TempFile file("dataio_noheader.csv", "1,2\n3,4\n");
    CsvOptions options;
    options.header = false;
    const Dataset dataset = load_csv(file.path, options);
    CHECK(dataset.column_names == std::vector<std::string>{"c0", "c1"});
    CHECK(dataset.rows() == 2);
}
