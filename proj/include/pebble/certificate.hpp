#pragma once

#include <pebble/strategy.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pebble {

/// Arithmetic failure: a vertex with zero column sum, a negative multiplier,
/// an undeterminable root.
class CertificateError : public Error
{
public:
    using Error::Error;
};

/// The certificate is well formed but proves less than it claims.
class VerificationFailure : public Error
{
public:
    using Error::Error;
};

enum class RowKind
{
    strategy,
    assumption
};

struct CertificateRow
{
    RowKind kind = RowKind::strategy;
    Rational multiplier = 1;
    /// In the certificate's column order.
    std::vector<Rational> coeffs;
    Rational rhs = 0;
    /// Hypothesis text for assumption rows.
    std::string tag;
    /// Source line, 0 when built in memory.
    int line = 0;
    /// Negative entries without an explicit "assume" marker.
    bool inferred_assumption = false;
};

struct Certificate
{
    std::string graph;
    std::string name;
    /// Vertex label per column; empty means natural vertex order.
    std::vector<std::string> columns;
    std::optional<std::string> root;
    std::vector<CertificateRow> rows;
    std::optional<Integer> claimed_bound;
    /// Printed column sums followed by the printed total.
    std::optional<std::vector<Rational>> checksum;
    std::vector<std::string> comments;
};

struct VerifiedBound
{
    Integer bound;
    int root = 0;
    Rational total;
    Rational min_column;
    /// m_v by vertex index; the root entry is 0.
    std::vector<Rational> column_sums;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;
};

/// Re-validates every strategy row, then bound = floor(M/m) + 1 with
/// M = sum multiplier * rhs and m the least weighted column sum off the root.
auto verify_certificate(const Graph & g, const Certificate & cert) -> VerifiedBound;

/// Root index resolved from the directive or the unique all-zero column.
auto certificate_root(const Graph & g, const Certificate & cert) -> int;

/// Matrix text: "multiplier | c1 ... cn | rhs" rows, '&' accepted as a cell separator.
auto parse_certificate(std::string_view text) -> Certificate;
/// A file split into cases by "case:" lines; a file without them is one case.
auto parse_certificates(std::string_view text) -> std::vector<Certificate>;
auto emit_certificate(const Certificate & cert) -> std::string;
auto emit_certificates(const std::vector<Certificate> & certs) -> std::string;

auto parse_certificate_json(std::string_view text) -> std::vector<Certificate>;
auto emit_certificate_json(const Certificate & cert) -> std::string;

/// Dispatches on a leading '{' or '['.
auto parse_certificate_any(std::string_view text) -> std::vector<Certificate>;
auto load_certificate_file(const std::string & path) -> std::vector<Certificate>;

/// Certificate from strategies and multipliers, natural column order.
auto make_certificate(const Graph & g, int root, const std::vector<Strategy> & strategies, const std::vector<Rational> & multipliers) -> Certificate;

/// Scales all multipliers by one positive factor so they become coprime integers.
auto integral_multipliers(Certificate cert) -> Certificate;

/// Merges strategy rows sharing their single root child into one nonbasic row.
/// Falls back per group when the merge is not a strategy.
auto simplify_certificate(const Graph & g, const Certificate & cert) -> Certificate;

struct CaseAnalysis
{
    Integer bound;
    std::vector<VerifiedBound> cases;
    /// Always set: assumption rows are hypotheses and their exhaustiveness is not checked.
    std::string disclaimer;
};

auto verify_case_analysis(const Graph & g, int root, const std::vector<Certificate> & cases) -> CaseAnalysis;

}
