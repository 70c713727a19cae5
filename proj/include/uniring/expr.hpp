#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "uniring/relation.hpp"
#include "uniring/types.hpp"

namespace uniring {

// A parsed boolean expression over the two locality variables
//   p  — the predecessor process's value (x_{i-1})
//   s  — the process's own value (x_i)
// Grammar (precedence low to high):
//   or    := and ("||" and)*
//   and   := unary ("&&" unary)*
//   unary := "!" unary | cmp
//   cmp   := sum (("=="|"!="|"<="|">="|"<"|">") sum)?     (non-associative)
//   sum   := term (("+"|"-") term)*
//   term  := factor (("*"|"%") factor)*
//   factor:= "-" factor | "p" | "s" | integer | "(" or ")"
// Arithmetic is over unbounded signed integers; "%" is the nonnegative
// remainder (result in [0, |divisor|)); "%" by zero raises ExprError.
// Integers and booleans are distinct types; the top level must be boolean.
class RelationExpr {
  public:
    // Parses the expression; throws ExprError on any lexical, syntactic,
    // or type error (including a non-boolean top-level type).
    static RelationExpr parse(std::string_view text);

    // Evaluates with p = a, s = b. Throws ExprError on modulo by zero.
    bool eval(Value a, Value b) const;

    const std::string& text() const { return text_; }

    RelationExpr(RelationExpr&&) noexcept;
    RelationExpr& operator=(RelationExpr&&) noexcept;
    ~RelationExpr();

  private:
    struct Node;
    RelationExpr(std::string text, std::unique_ptr<Node> root);

    std::string text_;
    std::unique_ptr<Node> root_;
};

// Materializes the relation {(a,b) in Z_M x Z_M | expr holds with p=a, s=b}.
LocalityRelation eval_relation_expr(std::string_view expr, Domain domain);

} // namespace uniring
