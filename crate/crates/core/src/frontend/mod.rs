//! Mini-language front end: parsing, CFG construction, widening points.

mod ast;
mod cfg;
mod parse;

pub use ast::{CmpOp, Cond, Expr, ExprDisplay, Program, Stmt, VarId};
pub use cfg::{build_cfg, select_widening_points, Cfg, Edge, NodeId, Transfer, WideningPoints};
pub use parse::{parse, ParseError, ParseErrorKind, Pos};
