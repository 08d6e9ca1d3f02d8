#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace orbitsr {

enum class OpCode : std::uint8_t {
    Const,
    Hole,  // placeholder constant in a skeleton
    Var,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Sqrt,
    Square,
    Sin,
    Cos,
    Tan,
    Arctan,
    Exp,
    Log,
};

bool op_is_binary(OpCode op);
bool op_is_unary(OpCode op);
const char* op_name(OpCode op);

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    OpCode op = OpCode::Const;
    double value = 0.0;     // Const
    std::string name;       // Var
    ExprPtr left, right;    // unary ops use left only
};

// Immutable expression tree. Copies share structure.
class Expression {
public:
    Expression() = default;
    explicit Expression(ExprPtr root) : root_(std::move(root)) {}

    static Expression constant(double value);
    static Expression hole();
    static Expression variable(std::string name);
    static Expression unary(OpCode op, const Expression& child);
    static Expression binary(OpCode op, const Expression& lhs,
                             const Expression& rhs);

    const ExprPtr& root() const { return root_; }
    bool valid() const { return root_ != nullptr; }

    int node_count() const;
    int hole_count() const;
    bool contains_variable() const;
    std::vector<std::string> variables() const;  // sorted, unique

    // Replace holes (left-to-right order) with constants.
    Expression substitute_holes(std::span<const double> values) const;

    // Fold constant subtrees and strip double negations.
    Expression simplified() const;

    // Prefix canonical text; commutative operands are ordered by their
    // serialized form, constants printed at 9 significant digits.
    std::string canonical_form() const;

    // Human-readable infix with explicit parentheses.
    std::string infix() const;

private:
    ExprPtr root_;
};

// Recursive single-row evaluation per the spec's operation contract.
// Out-of-domain results (division by zero, log/sqrt of non-positive,
// overflow) come back as NaN; unbound variables throw.
double eval_expression(const Expression& expr,
                       const std::map<std::string, double>& row);

// Column-oriented dataset for the search engine.
struct Dataset {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // column-major, equal lengths

    std::size_t rows() const { return data.empty() ? 0 : data[0].size(); }
    int column_index(const std::string& name) const;  // -1 when absent
    const std::vector<double>& column(const std::string& name) const;
    void add_column(std::string name, std::vector<double> values);
};

// Postfix compilation of an expression against a dataset, for bulk
// evaluation with varying hole values.
class Evaluator {
public:
    Evaluator(const Expression& expr, const Dataset& dataset);

    int hole_count() const { return holes_; }

    // Evaluate rows [row_begin, row_end) into out. Non-finite results are
    // normalized to NaN.
    void eval(std::span<const double> hole_values, std::size_t row_begin,
              std::size_t row_end, double* out) const;

private:
    struct Instr {
        OpCode op;
        double value = 0.0;       // Const
        const double* column = nullptr;  // Var
        int hole_index = -1;      // Hole
    };
    std::vector<Instr> program_;
    int holes_ = 0;
    int max_depth_ = 0;
};

}  // namespace orbitsr
