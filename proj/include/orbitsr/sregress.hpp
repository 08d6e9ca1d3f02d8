#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitsr/expression.hpp"

namespace orbitsr {

struct OperatorVocabulary {
    std::string name;
    std::vector<OpCode> binary;
    std::vector<OpCode> unary;
    bool allow_constants = true;

    std::size_t size() const { return binary.size() + unary.size(); }

    // add sub mul div | neg inv sqrt square sin cos tan arctan exp log
    static OperatorVocabulary full();
    // add sub mul | neg sin cos arctan
    static OperatorVocabulary trig();
};

struct SearchConfig {
    OperatorVocabulary vocabulary = OperatorVocabulary::trig();
    int max_nodes = 7;                      // <= 25
    std::vector<std::string> input_columns;
    std::string target_column;
    double fit_epsilon = 0x1p-30;           // epsilon_f
    double constant_grain = 0x1p-10;        // delta
    int max_constants = 3;
    int workers = 1;                        // 0 = hardware concurrency

    void validate(const Dataset& dataset) const;
};

struct ScoredCandidate {
    Expression expression;
    double fit_bits = 0.0;
    double parsimony_bits = 0.0;
    std::string frame_tag;
    int frame_order = 0;  // catalog position, used as the final tie-break
};

namespace sregress {

// Every structurally distinct skeleton with <= max_nodes over the
// vocabulary, in non-decreasing node count, deduplicated by canonical
// form after algebraic normalization. Composite variable-free subtrees
// are never produced; the bare placeholder constant is emitted once.
std::vector<Expression> enumerate_skeletons(const SearchConfig& cfg);

// Determine skeleton constants against the dataset target. Skeletons
// affine in their constants are solved by linear least squares; others
// by a deterministic 41-point grid per constant plus pattern search.
// Throws SearchError when every row is out of domain.
Expression fit_constants(const Expression& skeleton, const Dataset& dataset,
                         const SearchConfig& cfg);

// log2(1 + MAE / epsilon_f); out-of-domain rows contribute a loss of 1e3.
double fit_measure(const Expression& expr, const Dataset& dataset,
                   const std::string& target_column, double fit_epsilon);

// Description length in bits: operators at log2(vocabulary size),
// variables at log2(max(2, #inputs)), constants at log2(1 + |c|/delta).
double parsimony_measure(const Expression& expr, const SearchConfig& cfg);

// Non-dominated subset under (fit, parsimony) minimization, sorted by
// ascending parsimony. Candidates within 1e-9 on both axes collapse to
// one, preferring smaller canonical form, then smaller frame_order.
std::vector<ScoredCandidate> pareto_front(std::vector<ScoredCandidate> candidates);

// Append sin_1..sin_K columns with sin(k * column) per row.
Dataset augment_harmonics(const Dataset& dataset, const std::string& column,
                          int harmonics);

// Full search: enumerate, fit, simplify, discard constant-valued
// candidates, score, and reduce to the Pareto frontier. Deterministic
// for any worker count.
std::vector<ScoredCandidate> discover(const Dataset& dataset,
                                      const SearchConfig& cfg);

// Frontier CSV: rank,expression_prefix,expression_infix,fit_bits,
// parsimony_bits,frame_tag.
std::string serialize_frontier(const std::vector<ScoredCandidate>& frontier,
                               const std::vector<std::string>& header_comments = {});

}  // namespace sregress
}  // namespace orbitsr
