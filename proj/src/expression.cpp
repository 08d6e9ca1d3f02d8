#include "orbitsr/expression.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "orbitsr/errors.hpp"

namespace orbitsr {

bool op_is_binary(OpCode op) {
    switch (op) {
        case OpCode::Add:
        case OpCode::Sub:
        case OpCode::Mul:
        case OpCode::Div:
            return true;
        default:
            return false;
    }
}

bool op_is_unary(OpCode op) {
    switch (op) {
        case OpCode::Neg:
        case OpCode::Inv:
        case OpCode::Sqrt:
        case OpCode::Square:
        case OpCode::Sin:
        case OpCode::Cos:
        case OpCode::Tan:
        case OpCode::Arctan:
        case OpCode::Exp:
        case OpCode::Log:
            return true;
        default:
            return false;
    }
}

const char* op_name(OpCode op) {
    switch (op) {
        case OpCode::Const: return "const";
        case OpCode::Hole: return "hole";
        case OpCode::Var: return "var";
        case OpCode::Add: return "add";
        case OpCode::Sub: return "sub";
        case OpCode::Mul: return "mul";
        case OpCode::Div: return "div";
        case OpCode::Neg: return "neg";
        case OpCode::Inv: return "inv";
        case OpCode::Sqrt: return "sqrt";
        case OpCode::Square: return "square";
        case OpCode::Sin: return "sin";
        case OpCode::Cos: return "cos";
        case OpCode::Tan: return "tan";
        case OpCode::Arctan: return "arctan";
        case OpCode::Exp: return "exp";
        case OpCode::Log: return "log";
    }
    return "?";
}

Expression Expression::constant(double value) {
    auto node = std::make_shared<ExprNode>();
    node->op = OpCode::Const;
    node->value = value;
    return Expression(node);
}

Expression Expression::hole() {
    auto node = std::make_shared<ExprNode>();
    node->op = OpCode::Hole;
    return Expression(node);
}

Expression Expression::variable(std::string name) {
    auto node = std::make_shared<ExprNode>();
    node->op = OpCode::Var;
    node->name = std::move(name);
    return Expression(node);
}

Expression Expression::unary(OpCode op, const Expression& child) {
    if (!op_is_unary(op)) throw ValidationError("unary: not a unary op");
    if (!child.valid()) throw ValidationError("unary: empty child");
    auto node = std::make_shared<ExprNode>();
    node->op = op;
    node->left = child.root();
    return Expression(node);
}

Expression Expression::binary(OpCode op, const Expression& lhs,
                              const Expression& rhs) {
    if (!op_is_binary(op)) throw ValidationError("binary: not a binary op");
    if (!lhs.valid() || !rhs.valid()) throw ValidationError("binary: empty child");
    auto node = std::make_shared<ExprNode>();
    node->op = op;
    node->left = lhs.root();
    node->right = rhs.root();
    return Expression(node);
}

namespace {

int count_nodes(const ExprNode* n) {
    if (!n) return 0;
    return 1 + count_nodes(n->left.get()) + count_nodes(n->right.get());
}

int count_holes(const ExprNode* n) {
    if (!n) return 0;
    return (n->op == OpCode::Hole ? 1 : 0) + count_holes(n->left.get()) +
           count_holes(n->right.get());
}

bool has_variable(const ExprNode* n) {
    if (!n) return false;
    return n->op == OpCode::Var || has_variable(n->left.get()) ||
           has_variable(n->right.get());
}

void collect_vars(const ExprNode* n, std::set<std::string>& out) {
    if (!n) return;
    if (n->op == OpCode::Var) out.insert(n->name);
    collect_vars(n->left.get(), out);
    collect_vars(n->right.get(), out);
}

ExprPtr substitute(const ExprPtr& n, std::span<const double> values,
                   size_t& next) {
    if (!n) return nullptr;
    if (n->op == OpCode::Hole) {
        if (next >= values.size())
            throw ValidationError("substitute_holes: too few values");
        auto node = std::make_shared<ExprNode>();
        node->op = OpCode::Const;
        node->value = values[next++];
        return node;
    }
    ExprPtr l = substitute(n->left, values, next);
    ExprPtr r = substitute(n->right, values, next);
    if (l == n->left && r == n->right) return n;
    auto node = std::make_shared<ExprNode>(*n);
    node->left = l;
    node->right = r;
    return node;
}

std::string format_const(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string canon(const ExprNode* n) {
    switch (n->op) {
        case OpCode::Const:
            return "(const " + format_const(n->value) + ")";
        case OpCode::Hole:
            return "(const ?)";
        case OpCode::Var:
            return "(var " + n->name + ")";
        default:
            break;
    }
    if (op_is_unary(n->op))
        return std::string("(") + op_name(n->op) + " " + canon(n->left.get()) +
               ")";
    std::string l = canon(n->left.get());
    std::string r = canon(n->right.get());
    if ((n->op == OpCode::Add || n->op == OpCode::Mul) && r < l) std::swap(l, r);
    return std::string("(") + op_name(n->op) + " " + l + " " + r + ")";
}

std::string infix_text(const ExprNode* n) {
    switch (n->op) {
        case OpCode::Const: return format_const(n->value);
        case OpCode::Hole: return "?";
        case OpCode::Var: return n->name;
        case OpCode::Add:
            return "(" + infix_text(n->left.get()) + " + " +
                   infix_text(n->right.get()) + ")";
        case OpCode::Sub:
            return "(" + infix_text(n->left.get()) + " - " +
                   infix_text(n->right.get()) + ")";
        case OpCode::Mul:
            return "(" + infix_text(n->left.get()) + " * " +
                   infix_text(n->right.get()) + ")";
        case OpCode::Div:
            return "(" + infix_text(n->left.get()) + " / " +
                   infix_text(n->right.get()) + ")";
        case OpCode::Neg:
            return "(-" + infix_text(n->left.get()) + ")";
        case OpCode::Inv:
            return "(1 / " + infix_text(n->left.get()) + ")";
        case OpCode::Square:
            return "(" + infix_text(n->left.get()) + ")^2";
        default:
            return std::string(op_name(n->op)) + "(" +
                   infix_text(n->left.get()) + ")";
    }
}

double apply_unary(OpCode op, double x) {
    switch (op) {
        case OpCode::Neg: return -x;
        case OpCode::Inv: return x == 0.0 ? std::nan("") : 1.0 / x;
        case OpCode::Sqrt: return x > 0.0 ? std::sqrt(x) : (x == 0.0 ? 0.0 : std::nan(""));
        case OpCode::Square: return x * x;
        case OpCode::Sin: return std::sin(x);
        case OpCode::Cos: return std::cos(x);
        case OpCode::Tan: return std::tan(x);
        case OpCode::Arctan: return std::atan(x);
        case OpCode::Exp: return std::exp(x);
        case OpCode::Log: return x > 0.0 ? std::log(x) : std::nan("");
        default: return std::nan("");
    }
}

double apply_binary(OpCode op, double a, double b) {
    switch (op) {
        case OpCode::Add: return a + b;
        case OpCode::Sub: return a - b;
        case OpCode::Mul: return a * b;
        case OpCode::Div: return b == 0.0 ? std::nan("") : a / b;
        default: return std::nan("");
    }
}

ExprPtr simplify_node(const ExprPtr& n) {
    if (!n || (!n->left && !n->right)) return n;
    ExprPtr l = simplify_node(n->left);
    ExprPtr r = simplify_node(n->right);

    // double negation
    if (n->op == OpCode::Neg && l->op == OpCode::Neg) return l->left;

    const bool l_const = l && l->op == OpCode::Const;
    const bool r_const = (!n->right) || (r && r->op == OpCode::Const);
    if (l_const && r_const) {
        const double v = op_is_unary(n->op)
                             ? apply_unary(n->op, l->value)
                             : apply_binary(n->op, l->value, r->value);
        if (std::isfinite(v)) {
            auto node = std::make_shared<ExprNode>();
            node->op = OpCode::Const;
            node->value = v;
            return node;
        }
    }
    if (l == n->left && r == n->right) return n;
    auto node = std::make_shared<ExprNode>(*n);
    node->left = l;
    node->right = r;
    return node;
}

}  // namespace

int Expression::node_count() const { return count_nodes(root_.get()); }
int Expression::hole_count() const { return count_holes(root_.get()); }
bool Expression::contains_variable() const { return has_variable(root_.get()); }

std::vector<std::string> Expression::variables() const {
    std::set<std::string> vars;
    collect_vars(root_.get(), vars);
    return {vars.begin(), vars.end()};
}

Expression Expression::substitute_holes(std::span<const double> values) const {
    size_t next = 0;
    ExprPtr out = substitute(root_, values, next);
    if (next != values.size())
        throw ValidationError("substitute_holes: too many values");
    return Expression(out);
}

Expression Expression::simplified() const {
    return Expression(simplify_node(root_));
}

std::string Expression::canonical_form() const {
    if (!root_) return "";
    return canon(root_.get());
}

std::string Expression::infix() const {
    if (!root_) return "";
    return infix_text(root_.get());
}

namespace {

double eval_node(const ExprNode* n, const std::map<std::string, double>& row) {
    switch (n->op) {
        case OpCode::Const: return n->value;
        case OpCode::Hole: return std::nan("");
        case OpCode::Var: {
            auto it = row.find(n->name);
            if (it == row.end())
                throw ValidationError("eval_expression: unbound variable " +
                                      n->name);
            return it->second;
        }
        default: break;
    }
    const double a = eval_node(n->left.get(), row);
    if (op_is_unary(n->op)) {
        const double v = apply_unary(n->op, a);
        return std::isfinite(v) ? v : std::nan("");
    }
    const double b = eval_node(n->right.get(), row);
    const double v = apply_binary(n->op, a, b);
    return std::isfinite(v) ? v : std::nan("");
}

}  // namespace

double eval_expression(const Expression& expr,
                       const std::map<std::string, double>& row) {
    if (!expr.valid()) throw ValidationError("eval_expression: empty expression");
    return eval_node(expr.root().get(), row);
}

int Dataset::column_index(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

const std::vector<double>& Dataset::column(const std::string& name) const {
    const int idx = column_index(name);
    if (idx < 0) throw ConfigError("Dataset: unknown column '" + name + "'");
    return data[static_cast<size_t>(idx)];
}

void Dataset::add_column(std::string name, std::vector<double> values) {
    if (!data.empty() && values.size() != rows())
        throw ValidationError("Dataset: column length mismatch for '" + name +
                              "'");
    columns.push_back(std::move(name));
    data.push_back(std::move(values));
}

Evaluator::Evaluator(const Expression& expr, const Dataset& dataset) {
    if (!expr.valid()) throw ValidationError("Evaluator: empty expression");
    // postorder flatten
    struct Frame {
        const ExprNode* node;
        int stage;
    };
    std::vector<Frame> stack{{expr.root().get(), 0}};
    int depth = 0, max_depth = 0;
    while (!stack.empty()) {
        auto& f = stack.back();
        const ExprNode* n = f.node;
        if (n->left && f.stage == 0) {
            f.stage = 1;
            stack.push_back({n->left.get(), 0});
            continue;
        }
        if (n->right && f.stage == 1) {
            f.stage = 2;
            stack.push_back({n->right.get(), 0});
            continue;
        }
        Instr instr;
        instr.op = n->op;
        switch (n->op) {
            case OpCode::Const:
                instr.value = n->value;
                ++depth;
                break;
            case OpCode::Hole:
                instr.hole_index = holes_++;
                ++depth;
                break;
            case OpCode::Var: {
                const int col = dataset.column_index(n->name);
                if (col < 0)
                    throw ValidationError("Evaluator: unbound variable " +
                                          n->name);
                instr.column = dataset.data[static_cast<size_t>(col)].data();
                ++depth;
                break;
            }
            default:
                depth -= op_is_binary(n->op) ? 1 : 0;
                break;
        }
        max_depth = std::max(max_depth, depth);
        program_.push_back(instr);
        stack.pop_back();
    }
    max_depth_ = max_depth;
}

void Evaluator::eval(std::span<const double> hole_values, std::size_t row_begin,
                     std::size_t row_end, double* out) const {
    if (static_cast<int>(hole_values.size()) != holes_)
        throw ValidationError("Evaluator: hole value count mismatch");
    const std::size_t n = row_end - row_begin;
    thread_local std::vector<std::vector<double>> stack_pool;
    if (stack_pool.size() < static_cast<size_t>(max_depth_))
        stack_pool.resize(max_depth_);
    for (auto& buf : stack_pool)
        if (buf.size() < n) buf.resize(n);

    int sp = 0;
    for (const auto& instr : program_) {
        switch (instr.op) {
            case OpCode::Const: {
                double* dst = stack_pool[sp++].data();
                std::fill(dst, dst + n, instr.value);
                break;
            }
            case OpCode::Hole: {
                double* dst = stack_pool[sp++].data();
                std::fill(dst, dst + n, hole_values[instr.hole_index]);
                break;
            }
            case OpCode::Var: {
                double* dst = stack_pool[sp++].data();
                const double* src = instr.column + row_begin;
                std::copy(src, src + n, dst);
                break;
            }
            case OpCode::Add: {
                double* b = stack_pool[--sp].data();
                double* a = stack_pool[sp - 1].data();
                for (std::size_t i = 0; i < n; ++i) a[i] += b[i];
                break;
            }
            case OpCode::Sub: {
                double* b = stack_pool[--sp].data();
                double* a = stack_pool[sp - 1].data();
                for (std::size_t i = 0; i < n; ++i) a[i] -= b[i];
                break;
            }
            case OpCode::Mul: {
                double* b = stack_pool[--sp].data();
                double* a = stack_pool[sp - 1].data();
                for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
                break;
            }
            case OpCode::Div: {
                double* b = stack_pool[--sp].data();
                double* a = stack_pool[sp - 1].data();
                for (std::size_t i = 0; i < n; ++i)
                    a[i] = b[i] == 0.0 ? std::nan("") : a[i] / b[i];
                break;
            }
            default: {
                double* a = stack_pool[sp - 1].data();
                const OpCode op = instr.op;
                for (std::size_t i = 0; i < n; ++i) a[i] = apply_unary(op, a[i]);
                break;
            }
        }
    }
    const double* top = stack_pool[0].data();
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::isfinite(top[i]) ? top[i] : std::nan("");
}

}  // namespace orbitsr
