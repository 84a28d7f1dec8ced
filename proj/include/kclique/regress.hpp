#pragma once

#include <string>
#include <vector>

namespace kclique {

struct SweepRecord;

// One fitted (or aliased) variable.
struct RegressionRow {
    std::string name;
    bool aliased = false;
    double estimate = 0.0;
    double std_error = 0.0;
    double t_value = 0.0;
    double p_value = 1.0;
    std::string significance;  // "0.001", "0.01", "0.05", "0.1" or ""
};

struct RegressionReport {
    std::vector<RegressionRow> rows;
    double residual_std_error = 0.0;
    int residual_df = 0;
    int model_df = 0;  // fitted non-intercept terms
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double f_statistic = 0.0;
    double f_p_value = 1.0;
    std::vector<std::string> aliased;
    int n_records_used = 0;
    int n_records_failed = 0;
};

// Generic ordinary least squares on explicit columns, via column-pivoted
// Householder QR. Exactly collinear (or zero) columns are flagged aliased
// and excluded from the fit rather than silently absorbed.
struct OlsFit {
    std::vector<double> beta;       // 0 for aliased columns
    std::vector<double> std_error;  // 0 for aliased columns
    std::vector<bool> aliased;
    std::vector<double> residuals;
    double ssr = 0.0;  // residual sum of squares
    double sst = 0.0;  // total sum of squares about the mean
    int rank = 0;
    int df_residual = 0;
};
OlsFit ols_fit(const std::vector<std::vector<double>>& columns, const std::vector<double>& y);

// Fits coverage on the full hyperparameter surface: Method dummy-coded as
// Prune/Genetic (Random baseline), Solver as DW2X (VFYC baseline); GA fields
// enter as zero on non-Genetic rows. Failed records are excluded. Baseline
// dummies appear as NA rows, matching the aliased reporting convention.
RegressionReport regress(const std::vector<SweepRecord>& records);

// Aligned plain-text report table.
std::string render_regression_report(const RegressionReport& report);

// Machine-readable twin (name,estimate,std_error,t_value,p_value,sig).
void write_regression_csv(const RegressionReport& report, const std::string& path);

std::string significance_label(double p);

}  // namespace kclique
