use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

/// Index of a declared variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(BigInt),
    Var(VarId),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn constant(c: i64) -> Self {
        Expr::Const(BigInt::from(c))
    }

    pub fn var(v: usize) -> Self {
        Expr::Var(VarId(v))
    }

    pub fn plus(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn minus(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn times(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    /// True when no variable is read.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var(_) => false,
            Expr::Neg(e) => e.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.is_constant() && b.is_constant()
            }
        }
    }

    /// True when every product has at least one constant factor.
    pub fn is_linear(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var(_) => true,
            Expr::Neg(e) => e.is_linear(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.is_linear() && b.is_linear(),
            Expr::Mul(a, b) => {
                (a.is_constant() && b.is_linear()) || (b.is_constant() && a.is_linear())
            }
        }
    }

    pub fn for_each_var(&self, f: &mut impl FnMut(VarId)) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => f(*v),
            Expr::Neg(e) => e.for_each_var(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.for_each_var(f);
                b.for_each_var(f);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl CmpOp {
    /// `a op b` holds iff `!(a op.negate() b)`.
    pub fn negate(self) -> Self {
        match self {
            CmpOp::Lt => CmpOp::Ge,
            CmpOp::Le => CmpOp::Gt,
            CmpOp::Gt => CmpOp::Le,
            CmpOp::Ge => CmpOp::Lt,
            CmpOp::Eq => CmpOp::Ne,
            CmpOp::Ne => CmpOp::Eq,
        }
    }

    /// `a op b` holds iff `b op.flip() a`.
    pub fn flip(self) -> Self {
        match self {
            CmpOp::Lt => CmpOp::Gt,
            CmpOp::Le => CmpOp::Ge,
            CmpOp::Gt => CmpOp::Lt,
            CmpOp::Ge => CmpOp::Le,
            CmpOp::Eq => CmpOp::Eq,
            CmpOp::Ne => CmpOp::Ne,
        }
    }

    pub fn holds<T: Ord>(self, a: &T, b: &T) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
        }
    }
}

/// `lhs op rhs`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cond {
    pub lhs: Expr,
    pub op: CmpOp,
    pub rhs: Expr,
}

impl Cond {
    pub fn new(lhs: Expr, op: CmpOp, rhs: Expr) -> Self {
        Cond { lhs, op, rhs }
    }

    pub fn negate(&self) -> Self {
        Cond {
            lhs: self.lhs.clone(),
            op: self.op.negate(),
            rhs: self.rhs.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Assign(VarId, Expr),
    Havoc(VarId),
    Skip,
    If {
        cond: Cond,
        then_branch: Vec<Stmt>,
        else_branch: Vec<Stmt>,
    },
    While {
        cond: Cond,
        body: Vec<Stmt>,
    },
}

/// A parsed program: declared variables (in declaration order) and the body.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Program {
    pub vars: Vec<String>,
    pub body: Vec<Stmt>,
}

impl Program {
    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|v| v == name).map(VarId)
    }

    pub fn var_name(&self, v: VarId) -> &str {
        &self.vars[v.0]
    }

    /// Renders the program back to source; reparsing yields an equal program.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if !self.vars.is_empty() {
            out.push_str("int ");
            out.push_str(&self.vars.join(", "));
            out.push_str(";\n");
        }
        for s in &self.body {
            render_stmt(self, s, 0, &mut out);
        }
        out
    }

    pub fn display_expr<'a>(&'a self, e: &'a Expr) -> ExprDisplay<'a> {
        ExprDisplay {
            names: &self.vars,
            expr: e,
        }
    }

    pub fn display_cond<'a>(&'a self, c: &'a Cond) -> CondDisplay<'a> {
        CondDisplay {
            names: &self.vars,
            cond: c,
        }
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("    ");
    }
}

fn render_block(p: &Program, body: &[Stmt], depth: usize, out: &mut String) {
    out.push_str("{\n");
    for s in body {
        render_stmt(p, s, depth + 1, out);
    }
    indent(out, depth);
    out.push('}');
}

fn render_stmt(p: &Program, s: &Stmt, depth: usize, out: &mut String) {
    use core::fmt::Write;
    indent(out, depth);
    match s {
        Stmt::Assign(v, e) => {
            let _ = writeln!(out, "{} = {};", p.var_name(*v), p.display_expr(e));
        }
        Stmt::Havoc(v) => {
            let _ = writeln!(out, "havoc {};", p.var_name(*v));
        }
        Stmt::Skip => out.push_str("skip;\n"),
        Stmt::If {
            cond,
            then_branch,
            else_branch,
        } => {
            let _ = write!(out, "if ({}) ", p.display_cond(cond));
            render_block(p, then_branch, depth, out);
            if !else_branch.is_empty() {
                out.push_str(" else ");
                render_block(p, else_branch, depth, out);
            }
            out.push('\n');
        }
        Stmt::While { cond, body } => {
            let _ = write!(out, "while ({}) ", p.display_cond(cond));
            render_block(p, body, depth, out);
            out.push('\n');
        }
    }
}

pub struct ExprDisplay<'a> {
    names: &'a [String],
    expr: &'a Expr,
}

impl ExprDisplay<'_> {
    fn go(&self, e: &Expr, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1: additive, 2: multiplicative, 3: unary/atom
        match e {
            Expr::Const(c) => {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "({})", c)
                } else {
                    write!(f, "{}", c)
                }
            }
            Expr::Var(v) => write!(f, "{}", self.names[v.0]),
            Expr::Neg(a) => {
                if matches!(**a, Expr::Neg(_)) {
                    write!(f, "-(")?;
                    self.go(a, 3, f)?;
                    write!(f, ")")
                } else {
                    write!(f, "-")?;
                    self.go(a, 3, f)
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sym = if matches!(e, Expr::Add(..)) { "+" } else { "-" };
                if prec > 1 {
                    write!(f, "(")?;
                }
                self.go(a, 1, f)?;
                write!(f, " {} ", sym)?;
                self.go(b, 2, f)?;
                if prec > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Expr::Mul(a, b) => {
                if prec > 2 {
                    write!(f, "(")?;
                }
                self.go(a, 2, f)?;
                write!(f, " * ")?;
                self.go(b, 3, f)?;
                if prec > 2 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.go(self.expr, 1, f)
    }
}

pub struct CondDisplay<'a> {
    names: &'a [String],
    cond: &'a Cond,
}

impl fmt::Display for CondDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = ExprDisplay {
            names: self.names,
            expr: &self.cond.lhs,
        };
        let r = ExprDisplay {
            names: self.names,
            expr: &self.cond.rhs,
        };
        write!(f, "{} {} {}", l, self.cond.op.symbol(), r)
    }
}
