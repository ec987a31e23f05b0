//! Lexer and recursive-descent parser for the mini-language.
//!
//! The surface syntax is a small C subset: `int` declarations (optionally
//! initialized), assignments (`=`, `+=`, `-=`, `*=`, `++`, `--`), `if`/`else`,
//! `while`, `for`, `havoc x;` and `skip;`. The body may optionally be wrapped
//! in `int main() { ... }`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use super::ast::{CmpOp, Cond, Expr, Program, Stmt, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(char),
    Syntax { expected: String, found: String },
    Undeclared(String),
    Redeclared(String),
    NonInteger(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.pos.line, self.pos.col)?;
        match &self.kind {
            ParseErrorKind::Lexical(c) => write!(f, "unexpected character '{}'", c),
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {}, found {}", expected, found)
            }
            ParseErrorKind::Undeclared(v) => write!(f, "use of undeclared variable '{}'", v),
            ParseErrorKind::Redeclared(v) => write!(f, "variable '{}' declared twice", v),
            ParseErrorKind::NonInteger(what) => {
                write!(f, "non-integer construct not supported: {}", what)
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Float(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{}'", s),
            Tok::Int(n) => write!(f, "'{}'", n),
            Tok::Float(s) => write!(f, "'{}'", s),
            Tok::Sym(s) => write!(f, "'{}'", s),
            Tok::Eof => write!(f, "end of file"),
        }
    }
}

// Longest symbols first.
const SYMBOLS: &[&str] = &[
    "++", "--", "+=", "-=", "*=", "<=", ">=", "==", "!=", "&&", "||", "+", "-", "*", "/", "%", "<",
    ">", "=", "(", ")", "{", "}", ";", ",", "!",
];

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                {
                    let c = chars[i];
                    advance(&mut i, &mut line, &mut col, c);
                }
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            advance(&mut i, &mut line, &mut col, '/');
            advance(&mut i, &mut line, &mut col, '*');
            loop {
                if i >= chars.len() {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::Syntax {
                            expected: "'*/'".into(),
                            found: "end of file".into(),
                        },
                    });
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    advance(&mut i, &mut line, &mut col, '*');
                    advance(&mut i, &mut line, &mut col, '/');
                    break;
                }
                {
                    let c = chars[i];
                    advance(&mut i, &mut line, &mut col, c);
                }
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                {
                    let c = chars[i];
                    advance(&mut i, &mut line, &mut col, c);
                }
            }
            let is_float =
                i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E');
            if is_float {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '.') {
                    {
                        let c = chars[i];
                        advance(&mut i, &mut line, &mut col, c);
                    }
                }
                let text: String = chars[start..i].iter().collect();
                toks.push((Tok::Float(text), pos));
            } else {
                let text: String = chars[start..i].iter().collect();
                let n: BigInt = text.parse().expect("digits form an integer");
                toks.push((Tok::Int(n), pos));
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                {
                    let c = chars[i];
                    advance(&mut i, &mut line, &mut col, c);
                }
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        let rest = &chars[i..];
        let sym = SYMBOLS.iter().find(|s| {
            let sc: Vec<char> = s.chars().collect();
            rest.starts_with(&sc)
        });
        match sym {
            Some(s) => {
                for ch in s.chars() {
                    advance(&mut i, &mut line, &mut col, ch);
                }
                toks.push((Tok::Sym(s), pos));
            }
            None => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::Lexical(c),
                })
            }
        }
    }
    toks.push((Tok::Eof, Pos { line, col }));
    Ok(toks)
}

const NON_INTEGER_TYPES: &[&str] = &["float", "double", "char", "bool", "long", "unsigned"];
const KEYWORDS: &[&str] = &[
    "int", "if", "else", "while", "for", "havoc", "skip", "return",
];

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    vars: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.at + n).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err_expected<T>(&self, expected: &str) -> PResult<T> {
        let found = self.peek();
        let kind = match found {
            Tok::Float(s) => ParseErrorKind::NonInteger(alloc::format!("literal {}", s)),
            Tok::Sym(s @ ("/" | "%")) => {
                ParseErrorKind::NonInteger(alloc::format!("operator '{}'", s))
            }
            Tok::Ident(s) if NON_INTEGER_TYPES.contains(&s.as_str()) => {
                ParseErrorKind::NonInteger(alloc::format!("type '{}'", s))
            }
            _ => ParseErrorKind::Syntax {
                expected: expected.to_string(),
                found: found.to_string(),
            },
        };
        Err(ParseError {
            pos: self.pos(),
            kind,
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == k)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.err_expected(&alloc::format!("'{}'", s))
        }
    }

    fn expect_kw(&mut self, k: &str) -> PResult<()> {
        if self.is_kw(k) {
            self.bump();
            Ok(())
        } else {
            self.err_expected(&alloc::format!("'{}'", k))
        }
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let (_, p) = self.bump();
                Ok((s, p))
            }
            _ => self.err_expected("identifier"),
        }
    }

    fn lookup(&self, name: &str, pos: Pos) -> PResult<VarId> {
        self.vars
            .iter()
            .position(|v| v == name)
            .map(VarId)
            .ok_or(ParseError {
                pos,
                kind: ParseErrorKind::Undeclared(name.to_string()),
            })
    }

    fn program(&mut self) -> PResult<Vec<Stmt>> {
        // `int main() { ... }`
        let wrapped = self.is_kw("int")
            && matches!(self.peek_at(1), Tok::Ident(_))
            && matches!(self.peek_at(2), Tok::Sym("("));
        let mut body = Vec::new();
        if wrapped {
            self.bump();
            self.ident()?;
            self.expect_sym("(")?;
            self.expect_sym(")")?;
            self.expect_sym("{")?;
            while !self.is_sym("}") {
                if matches!(self.peek(), Tok::Eof) {
                    return self.err_expected("'}'");
                }
                self.stmt(&mut body)?;
            }
            self.bump();
        } else {
            while !matches!(self.peek(), Tok::Eof) {
                self.stmt(&mut body)?;
            }
        }
        if !matches!(self.peek(), Tok::Eof) {
            return self.err_expected("end of file");
        }
        Ok(body)
    }

    fn block_or_stmt(&mut self) -> PResult<Vec<Stmt>> {
        let mut out = Vec::new();
        self.stmt(&mut out)?;
        Ok(out)
    }

    fn stmt(&mut self, out: &mut Vec<Stmt>) -> PResult<()> {
        match self.peek().clone() {
            Tok::Sym(";") => {
                self.bump();
                Ok(())
            }
            Tok::Sym("{") => {
                self.bump();
                while !self.is_sym("}") {
                    if matches!(self.peek(), Tok::Eof) {
                        return self.err_expected("'}'");
                    }
                    self.stmt(out)?;
                }
                self.bump();
                Ok(())
            }
            Tok::Ident(k) if k == "int" => {
                self.decl(out)?;
                self.expect_sym(";")
            }
            Tok::Ident(k) if NON_INTEGER_TYPES.contains(&k.as_str()) => {
                self.err_expected("statement")
            }
            Tok::Ident(k) if k == "havoc" => {
                self.bump();
                let (name, p) = self.ident()?;
                let v = self.lookup(&name, p)?;
                self.expect_sym(";")?;
                out.push(Stmt::Havoc(v));
                Ok(())
            }
            Tok::Ident(k) if k == "skip" => {
                self.bump();
                self.expect_sym(";")?;
                out.push(Stmt::Skip);
                Ok(())
            }
            Tok::Ident(k) if k == "if" => {
                self.bump();
                self.expect_sym("(")?;
                let cond = self.cond()?;
                self.expect_sym(")")?;
                let then_branch = self.block_or_stmt()?;
                let else_branch = if self.is_kw("else") {
                    self.bump();
                    self.block_or_stmt()?
                } else {
                    Vec::new()
                };
                out.push(Stmt::If {
                    cond,
                    then_branch,
                    else_branch,
                });
                Ok(())
            }
            Tok::Ident(k) if k == "while" => {
                self.bump();
                self.expect_sym("(")?;
                let cond = self.cond()?;
                self.expect_sym(")")?;
                let body = self.block_or_stmt()?;
                out.push(Stmt::While { cond, body });
                Ok(())
            }
            Tok::Ident(k) if k == "for" => self.for_loop(out),
            _ => {
                let s = self.simple_assign()?;
                self.expect_sym(";")?;
                out.push(s);
                Ok(())
            }
        }
    }

    // for (init; cond; step) body  ==>  init; while (cond) { body; step }
    fn for_loop(&mut self, out: &mut Vec<Stmt>) -> PResult<()> {
        self.expect_kw("for")?;
        self.expect_sym("(")?;
        if self.is_kw("int") {
            self.decl(out)?;
        } else if !self.is_sym(";") {
            let s = self.simple_assign()?;
            out.push(s);
        }
        self.expect_sym(";")?;
        let cond = self.cond()?;
        self.expect_sym(";")?;
        let step = if self.is_sym(")") {
            None
        } else {
            Some(self.simple_assign()?)
        };
        self.expect_sym(")")?;
        let mut body = self.block_or_stmt()?;
        body.extend(step);
        out.push(Stmt::While { cond, body });
        Ok(())
    }

    fn decl(&mut self, out: &mut Vec<Stmt>) -> PResult<()> {
        self.expect_kw("int")?;
        loop {
            let (name, p) = self.ident()?;
            if self.vars.contains(&name) {
                return Err(ParseError {
                    pos: p,
                    kind: ParseErrorKind::Redeclared(name),
                });
            }
            self.vars.push(name);
            let v = VarId(self.vars.len() - 1);
            if self.eat_sym("=") {
                let e = self.expr()?;
                out.push(Stmt::Assign(v, e));
            }
            if !self.eat_sym(",") {
                return Ok(());
            }
        }
    }

    fn simple_assign(&mut self) -> PResult<Stmt> {
        if self.is_sym("++") || self.is_sym("--") {
            let (op, _) = self.bump();
            let (name, p) = self.ident()?;
            let v = self.lookup(&name, p)?;
            return Ok(step(v, op == Tok::Sym("++")));
        }
        let (name, p) = self.ident()?;
        let v = self.lookup(&name, p)?;
        let (op, _) = self.bump();
        let s = match op {
            Tok::Sym("=") => Stmt::Assign(v, self.expr()?),
            Tok::Sym("+=") => Stmt::Assign(v, Expr::plus(Expr::Var(v), self.expr()?)),
            Tok::Sym("-=") => Stmt::Assign(v, Expr::minus(Expr::Var(v), self.expr()?)),
            Tok::Sym("*=") => Stmt::Assign(v, Expr::times(Expr::Var(v), self.expr()?)),
            Tok::Sym("++") => step(v, true),
            Tok::Sym("--") => step(v, false),
            _ => {
                self.at -= 1;
                return self.err_expected("assignment operator");
            }
        };
        Ok(s)
    }

    fn cond(&mut self) -> PResult<Cond> {
        let lhs = self.expr()?;
        let op = match self.peek() {
            Tok::Sym("<") => CmpOp::Lt,
            Tok::Sym("<=") => CmpOp::Le,
            Tok::Sym(">") => CmpOp::Gt,
            Tok::Sym(">=") => CmpOp::Ge,
            Tok::Sym("==") => CmpOp::Eq,
            Tok::Sym("!=") => CmpOp::Ne,
            _ => return self.err_expected("comparison operator"),
        };
        self.bump();
        let rhs = self.expr()?;
        Ok(Cond { lhs, op, rhs })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat_sym("+") {
                e = Expr::plus(e, self.term()?);
            } else if self.eat_sym("-") {
                e = Expr::minus(e, self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut e = self.unary()?;
        while self.eat_sym("*") {
            e = Expr::times(e, self.unary()?);
        }
        if self.is_sym("/") || self.is_sym("%") {
            return self.err_expected("operator");
        }
        Ok(e)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(alloc::boxed::Box::new(self.unary()?)));
        }
        if self.eat_sym("+") {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Const(n))
            }
            Tok::Ident(name)
                if !KEYWORDS.contains(&name.as_str())
                    && !NON_INTEGER_TYPES.contains(&name.as_str()) =>
            {
                let (_, p) = self.bump();
                Ok(Expr::Var(self.lookup(&name, p)?))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => self.err_expected("expression"),
        }
    }
}

fn step(v: VarId, up: bool) -> Stmt {
    let one = Expr::constant(1);
    if up {
        Stmt::Assign(v, Expr::plus(Expr::Var(v), one))
    } else {
        Stmt::Assign(v, Expr::minus(Expr::Var(v), one))
    }
}

/// Parses a source file into a [`Program`].
pub fn parse(src: &str) -> Result<Program, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        vars: Vec::new(),
    };
    let body = p.program()?;
    Ok(Program { vars: p.vars, body })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const FIG2A: &str = "int main() {
        int x = 0;
        while (x < 100)
        if (x < 50)
            x = x + 2;
        else
            x = x + 10;
    }";

    #[test]
    fn parses_running_example() {
        let p = parse(FIG2A).unwrap();
        assert_eq!(p.vars, vec!["x"]);
        assert_eq!(p.body.len(), 2);
        assert_eq!(p.body[0], Stmt::Assign(VarId(0), Expr::constant(0)));
        match &p.body[1] {
            Stmt::While { cond, body } => {
                assert_eq!(cond.op, CmpOp::Lt);
                assert!(matches!(body.as_slice(), [Stmt::If { .. }]));
            }
            other => panic!("expected while, got {:?}", other),
        }
    }

    #[test]
    fn empty_source_is_empty_program() {
        assert_eq!(parse("").unwrap(), Program::default());
        assert_eq!(parse("  // nothing\n").unwrap(), Program::default());
    }

    #[test]
    fn undeclared_variable() {
        let err = parse("int x;\nx = y;").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Undeclared("y".into()));
        assert_eq!(err.pos, Pos { line: 2, col: 5 });
    }

    #[test]
    fn lexical_and_syntax_errors_carry_positions() {
        let err = parse("int x;\n  x = 1 @ 2;").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Lexical('@'));
        assert_eq!(err.pos, Pos { line: 2, col: 9 });

        let err = parse("int x; x = ;").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax { .. }));
        assert_eq!(err.pos.col, 12);
    }

    #[test]
    fn non_integer_constructs_rejected() {
        for src in ["int x; x = 1.5;", "float y;", "int x; x = x / 2;"] {
            let err = parse(src).unwrap_err();
            assert!(
                matches!(err.kind, ParseErrorKind::NonInteger(_)),
                "{}: {:?}",
                src,
                err
            );
        }
    }

    #[test]
    fn redeclaration_rejected() {
        let err = parse("int x; int x;").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Redeclared("x".into()));
    }

    #[test]
    fn for_loop_desugars_to_while() {
        let p = parse("int N = 7; for (int K = 2; K < N; ++K) { N -= 0; }").unwrap();
        assert_eq!(p.vars, vec!["N", "K"]);
        assert_eq!(p.body.len(), 3);
        let Stmt::While { body, .. } = &p.body[2] else {
            panic!()
        };
        assert_eq!(
            body[1],
            Stmt::Assign(VarId(1), Expr::plus(Expr::var(1), Expr::constant(1)))
        );
    }

    #[test]
    fn render_round_trip() {
        let src = "int a, b = -3; havoc a; skip;
            while (a * 2 < b - (a - 1)) { if (a != 0) a -= -(-a); else { b = 3 * (a + b); } }";
        let p = parse(src).unwrap();
        let again = parse(&p.render()).unwrap();
        assert_eq!(p, again);
    }
}
