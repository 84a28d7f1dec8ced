#include "kclique/regress.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "kclique/errors.hpp"
#include "kclique/stats.hpp"
#include "kclique/sweep.hpp"
#include "kclique/util.hpp"

namespace kclique {

std::string significance_label(double p) {
    if (p < 0.001) return "0.001";
    if (p < 0.01) return "0.01";
    if (p < 0.05) return "0.05";
    if (p < 0.1) return "0.1";
    return "";
}

OlsFit ols_fit(const std::vector<std::vector<double>>& columns, const std::vector<double>& y) {
    const int p = static_cast<int>(columns.size());
    if (p == 0) throw DomainError("ols_fit: no columns");
    const int n = static_cast<int>(y.size());
    for (const auto& c : columns)
        if (static_cast<int>(c.size()) != n) throw DomainError("ols_fit: ragged design matrix");
    if (n <= p) throw DomainError("ols_fit: need more rows than columns");

    // Sequential Householder QR: columns are taken in order, and a column
    // whose part below the current diagonal collapses is aliased (so later
    // duplicates get dropped, not earlier terms).
    std::vector<std::vector<double>> a = columns;  // a[j][i]: column-major
    std::vector<double> qty = y;                   // accumulates Q^T y
    std::vector<std::vector<double>> reflectors;
    std::vector<double> vnorm2s;
    std::vector<int> kept;  // original index of each fitted column

    auto apply_reflector = [&](std::size_t r, std::vector<double>& target) {
        const auto& v = reflectors[r];
        const int lo = static_cast<int>(r);
        double dot = 0.0;
        for (int i = lo; i < n; ++i) dot += v[static_cast<std::size_t>(i)] * target[static_cast<std::size_t>(i)];
        const double f = 2.0 * dot / vnorm2s[r];
        for (int i = lo; i < n; ++i) target[static_cast<std::size_t>(i)] -= f * v[static_cast<std::size_t>(i)];
    };

    OlsFit fit;
    fit.aliased.assign(static_cast<std::size_t>(p), true);
    for (int j = 0; j < p; ++j) {
        auto& col = a[static_cast<std::size_t>(j)];
        double initial_norm = 0.0;
        for (double v : col) initial_norm += v * v;
        initial_norm = std::sqrt(initial_norm);

        for (std::size_t r = 0; r < reflectors.size(); ++r) apply_reflector(r, col);

        const int rank = static_cast<int>(kept.size());
        double below = 0.0;
        for (int i = rank; i < n; ++i) below += col[static_cast<std::size_t>(i)] * col[static_cast<std::size_t>(i)];
        below = std::sqrt(below);
        const double tol = std::max(1e-12, initial_norm * 1e-10);
        if (below <= tol) continue;  // exactly collinear with earlier columns

        double alpha = below;
        if (col[static_cast<std::size_t>(rank)] > 0) alpha = -alpha;
        std::vector<double> v(static_cast<std::size_t>(n), 0.0);
        for (int i = rank; i < n; ++i) v[static_cast<std::size_t>(i)] = col[static_cast<std::size_t>(i)];
        v[static_cast<std::size_t>(rank)] -= alpha;
        double vnorm2 = 0.0;
        for (int i = rank; i < n; ++i) vnorm2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        reflectors.push_back(std::move(v));
        vnorm2s.push_back(vnorm2);
        apply_reflector(reflectors.size() - 1, col);
        apply_reflector(reflectors.size() - 1, qty);
        kept.push_back(j);
        fit.aliased[static_cast<std::size_t>(j)] = false;
    }

    const int rank = static_cast<int>(kept.size());
    // R lives in the transformed kept columns: R[i][c] = a[kept[c]][i].
    auto r_at = [&](int i, int c) {
        return a[static_cast<std::size_t>(kept[static_cast<std::size_t>(c)])][static_cast<std::size_t>(i)];
    };
    std::vector<double> beta_kept(static_cast<std::size_t>(rank), 0.0);
    for (int i = rank - 1; i >= 0; --i) {
        double s = qty[static_cast<std::size_t>(i)];
        for (int c = i + 1; c < rank; ++c) s -= r_at(i, c) * beta_kept[static_cast<std::size_t>(c)];
        beta_kept[static_cast<std::size_t>(i)] = s / r_at(i, i);
    }

    fit.rank = rank;
    fit.df_residual = n - rank;
    fit.beta.assign(static_cast<std::size_t>(p), 0.0);
    fit.std_error.assign(static_cast<std::size_t>(p), 0.0);
    for (int c = 0; c < rank; ++c)
        fit.beta[static_cast<std::size_t>(kept[static_cast<std::size_t>(c)])] = beta_kept[static_cast<std::size_t>(c)];

    // Residuals against the original design.
    fit.residuals.assign(static_cast<std::size_t>(n), 0.0);
    double y_mean = 0.0;
    for (double v : y) y_mean += v;
    y_mean /= n;
    fit.ssr = 0.0;
    fit.sst = 0.0;
    for (int i = 0; i < n; ++i) {
        double pred = 0.0;
        for (int j = 0; j < p; ++j)
            pred += columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * fit.beta[static_cast<std::size_t>(j)];
        const double r = y[static_cast<std::size_t>(i)] - pred;
        fit.residuals[static_cast<std::size_t>(i)] = r;
        fit.ssr += r * r;
        fit.sst += (y[static_cast<std::size_t>(i)] - y_mean) * (y[static_cast<std::size_t>(i)] - y_mean);
    }

    // Standard errors: sigma^2 * diag((R^T R)^-1), via R^-1.
    if (fit.df_residual > 0 && rank > 0) {
        const double sigma2 = fit.ssr / fit.df_residual;
        // rinv[i][j] = (R^-1)_{ij}, upper triangular
        std::vector<std::vector<double>> rinv(static_cast<std::size_t>(rank),
                                              std::vector<double>(static_cast<std::size_t>(rank), 0.0));
        for (int j = rank - 1; j >= 0; --j) {
            rinv[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1.0 / r_at(j, j);
            for (int i = j - 1; i >= 0; --i) {
                double s = 0.0;
                for (int l = i + 1; l <= j; ++l)
                    s += r_at(i, l) * rinv[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
                rinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -s / r_at(i, i);
            }
        }
        for (int i = 0; i < rank; ++i) {
            double s = 0.0;
            for (int j = i; j < rank; ++j)
                s += rinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                     rinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            fit.std_error[static_cast<std::size_t>(kept[static_cast<std::size_t>(i)])] =
                std::sqrt(sigma2 * s);
        }
    }
    return fit;
}

namespace {

struct NamedColumn {
    std::string name;
    std::vector<double> values;
};

}  // namespace

RegressionReport regress(const std::vector<SweepRecord>& records) {
    std::vector<const SweepRecord*> rows;
    int failed = 0;
    for (const SweepRecord& r : records) {
        if (r.failed) {
            ++failed;
            continue;
        }
        rows.push_back(&r);
    }
    const int n = static_cast<int>(rows.size());

    std::vector<NamedColumn> cols;
    auto add = [&](const std::string& name, auto getter) {
        NamedColumn c;
        c.name = name;
        c.values.reserve(static_cast<std::size_t>(n));
        for (const SweepRecord* r : rows) c.values.push_back(getter(*r));
        cols.push_back(std::move(c));
    };
    add("(Intercept)", [](const SweepRecord&) { return 1.0; });
    add("Prune", [](const SweepRecord& r) { return r.method == Method::Prune ? 1.0 : 0.0; });
    add("Genetic", [](const SweepRecord& r) { return r.method == Method::Genetic ? 1.0 : 0.0; });
    add("NumGen", [](const SweepRecord& r) { return static_cast<double>(r.num_gen); });
    add("PopSize", [](const SweepRecord& r) { return static_cast<double>(r.pop_size); });
    add("MutRate", [](const SweepRecord& r) { return r.mut_rate; });
    add("NumNodes", [](const SweepRecord& r) { return static_cast<double>(r.num_nodes); });
    add("LargestGroup", [](const SweepRecord& r) { return static_cast<double>(r.largest_group); });
    add("NumReps", [](const SweepRecord& r) { return static_cast<double>(r.num_reps); });
    add("AnnealTime", [](const SweepRecord& r) { return static_cast<double>(r.anneal_time_us); });
    add("ProgTime", [](const SweepRecord& r) { return static_cast<double>(r.prog_time_us); });
    add("ReadTime", [](const SweepRecord& r) { return static_cast<double>(r.read_time_us); });
    add("SpinRev", [](const SweepRecord& r) { return static_cast<double>(r.spin_rev); });
    add("DW2X", [](const SweepRecord& r) { return r.solver == Solver::DW2X ? 1.0 : 0.0; });

    if (n < static_cast<int>(cols.size()) + 2)
        throw DomainError("regress: need at least " + std::to_string(cols.size() + 2) +
                          " usable records, have " + std::to_string(n));

    std::vector<double> y;
    y.reserve(static_cast<std::size_t>(n));
    for (const SweepRecord* r : rows) y.push_back(r->coverage);

    std::vector<std::vector<double>> design;
    design.reserve(cols.size());
    for (const NamedColumn& c : cols) design.push_back(c.values);
    const OlsFit fit = ols_fit(design, y);

    RegressionReport report;
    report.n_records_used = n;
    report.n_records_failed = failed;
    report.residual_df = fit.df_residual;
    report.model_df = fit.rank - 1;  // non-intercept fitted terms
    report.residual_std_error =
        fit.df_residual > 0 ? std::sqrt(fit.ssr / fit.df_residual) : 0.0;
    report.r_squared = fit.sst > 0 ? 1.0 - fit.ssr / fit.sst : 0.0;
    report.adj_r_squared =
        1.0 - (1.0 - report.r_squared) * (n - 1) / static_cast<double>(fit.df_residual);
    if (report.model_df > 0 && fit.df_residual > 0 && report.r_squared < 1.0) {
        report.f_statistic = (report.r_squared / report.model_df) /
                             ((1.0 - report.r_squared) / fit.df_residual);
        report.f_p_value = f_dist_sf(report.f_statistic, report.model_df, fit.df_residual);
    }

    // Rows in device-report order, with the structural baseline dummies shown
    // as aliased right after their coded siblings.
    auto fitted_row = [&](std::size_t j) {
        RegressionRow row;
        row.name = cols[j].name;
        row.aliased = fit.aliased[j];
        if (!row.aliased) {
            row.estimate = fit.beta[j];
            row.std_error = fit.std_error[j];
            row.t_value = row.std_error > 0 ? row.estimate / row.std_error : 0.0;
            row.p_value = fit.df_residual > 0
                              ? student_t_two_sided_p(row.t_value, fit.df_residual)
                              : 1.0;
            row.significance = significance_label(row.p_value);
        }
        return row;
    };
    auto baseline_row = [](const std::string& name) {
        RegressionRow row;
        row.name = name;
        row.aliased = true;
        return row;
    };
    for (std::size_t j = 0; j < cols.size(); ++j) {
        report.rows.push_back(fitted_row(j));
        if (cols[j].name == "Genetic") report.rows.push_back(baseline_row("Random"));
        if (cols[j].name == "DW2X") report.rows.push_back(baseline_row("VFYC"));
    }
    for (const RegressionRow& row : report.rows)
        if (row.aliased) report.aliased.push_back(row.name);
    return report;
}

std::string render_regression_report(const RegressionReport& report) {
    std::string out;
    out += "Residual standard error: " + fmt_sci(report.residual_std_error, 4) + " on " +
           std::to_string(report.residual_df) + " degrees of freedom\n";
    out += "Multiple R-squared: " + fmt_fixed(report.r_squared, 4) +
           ", Adjusted R-squared: " + fmt_fixed(report.adj_r_squared, 4) + "\n";
    out += "F-statistic: " + fmt_fixed(report.f_statistic, 1) + " on " +
           std::to_string(report.model_df) + " and " + std::to_string(report.residual_df) +
           " DF, p-value: " + (report.f_p_value < 2.2e-16 ? "< 2.2e-16" : fmt_sci(report.f_p_value, 3)) +
           "\n";
    out += "Records used: " + std::to_string(report.n_records_used) +
           " (failed runs excluded: " + std::to_string(report.n_records_failed) + ")\n\n";

    const char* kHeader = "VarName         Estimate    Std. Error  t value     Pr(>|t|)    Sig.\n";
    out += kHeader;
    for (const RegressionRow& row : report.rows) {
        char line[160];
        if (row.aliased) {
            std::snprintf(line, sizeof(line), "%-15s %-11s %-11s %-11s %-11s\n", row.name.c_str(),
                          "NA", "NA", "NA", "NA");
        } else {
            const std::string p_text =
                row.p_value < 2e-16 ? "< 2e-16" : fmt_sci(row.p_value, 3);
            std::snprintf(line, sizeof(line), "%-15s %-11s %-11s %-11s %-11s %s\n",
                          row.name.c_str(), fmt_sci(row.estimate, 3).c_str(),
                          fmt_sci(row.std_error, 3).c_str(), fmt_fixed(row.t_value, 3).c_str(),
                          p_text.c_str(), row.significance.c_str());
        }
        out += line;
    }
    return out;
}

void write_regression_csv(const RegressionReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("write_regression_csv: cannot write " + path);
    out << "name,estimate,std_error,t_value,p_value,sig\n";
    for (const RegressionRow& row : report.rows) {
        if (row.aliased) {
            out << row.name << ",NA,NA,NA,NA,\n";
        } else {
            out << row.name << "," << fmt_double(row.estimate) << "," << fmt_double(row.std_error)
                << "," << fmt_double(row.t_value) << "," << fmt_double(row.p_value) << ","
                << row.significance << "\n";
        }
    }
    out << "r_squared," << fmt_double(report.r_squared) << ",,,,\n";
    out << "adj_r_squared," << fmt_double(report.adj_r_squared) << ",,,,\n";
    out << "f_statistic," << fmt_double(report.f_statistic) << ",,,,\n";
    out << "f_p_value," << fmt_double(report.f_p_value) << ",,,,\n";
    out << "residual_df," << report.residual_df << ",,,,\n";
}

}  // namespace kclique
