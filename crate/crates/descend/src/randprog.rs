//! Seeded generator of small terminating-by-construction programs, used by
//! the property suites.
//!
//! Every loop has a guard variable that only the loop increment changes,
//! so the analyses and the bounded oracle see loops of known shape.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    /// At most three.
    pub max_vars: usize,
    /// Maximum loop nesting depth.
    pub max_depth: usize,
    /// Generate programs over the single variable `x`.
    pub single_var: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_vars: 3,
            max_depth: 2,
            single_var: false,
        }
    }
}

impl Shape {
    pub fn single() -> Self {
        Shape {
            max_vars: 1,
            single_var: true,
            ..Shape::default()
        }
    }
}

const NAMES: [&str; 3] = ["a", "b", "c"];
const OPS: [&str; 6] = ["<", "<=", ">", ">=", "==", "!="];

/// Deepest indentation at which a conditional may still be opened.
const MAX_IF_DEPTH: usize = 4;

struct Gen {
    rng: ChaCha8Rng,
    vars: Vec<&'static str>,
    out: String,
    loops_left: usize,
    max_depth: usize,
}

impl Gen {
    fn line(&mut self, depth: usize, s: &str) {
        for _ in 0..depth {
            self.out.push_str("  ");
        }
        self.out.push_str(s);
        self.out.push('\n');
    }

    fn small(&mut self) -> i64 {
        self.rng.gen_range(-5..=5)
    }

    fn any_var(&mut self) -> &'static str {
        self.vars
            .choose(&mut self.rng)
            .copied()
            .expect("at least one variable")
    }

    fn expr(&mut self) -> String {
        let v = self.any_var();
        let w = self.any_var();
        let c = self.small();
        match self.rng.gen_range(0..6) {
            0 => c.to_string(),
            1 => format!("{} + {}", v, c),
            2 => format!("{} - {}", v, w),
            3 => format!("{} * {}", self.rng.gen_range(-2..=2), w),
            4 => format!("{} + {} + {}", v, w, c),
            _ => format!("-{}", v),
        }
    }

    fn cond(&mut self) -> String {
        let v = self.any_var();
        let op = *OPS.choose(&mut self.rng).expect("nonempty");
        if self.rng.gen_bool(0.3) && self.vars.len() > 1 {
            let w = self.any_var();
            format!("{} {} {}", v, op, w)
        } else {
            format!("{} {} {}", v, op, self.rng.gen_range(-10..=20))
        }
    }

    fn block(&mut self, depth: usize, nest: usize, guards: &mut Vec<&'static str>) {
        let n = self.rng.gen_range(1..=3);
        for _ in 0..n {
            self.stmt(depth, nest, guards);
        }
    }

    fn stmt(&mut self, depth: usize, nest: usize, guards: &mut Vec<&'static str>) {
        let free: Vec<&'static str> = self
            .vars
            .iter()
            .copied()
            .filter(|v| !guards.contains(v))
            .collect();
        let can_loop = self.loops_left > 0 && nest < self.max_depth && !free.is_empty();
        let roll = self.rng.gen_range(0..10);
        if can_loop && roll < 3 {
            self.loops_left -= 1;
            let g = *free.choose(&mut self.rng).expect("nonempty");
            let lo = self.rng.gen_range(-3..=3);
            let hi = lo + self.rng.gen_range(1..=12);
            let step = self.rng.gen_range(1..=3);
            let op = if self.rng.gen_bool(0.5) { "<" } else { "<=" };
            self.line(depth, &format!("{} = {};", g, lo));
            self.line(depth, &format!("while ({} {} {}) {{", g, op, hi));
            guards.push(g);
            self.block(depth + 1, nest + 1, guards);
            guards.pop();
            self.line(depth + 1, &format!("{} = {} + {};", g, g, step));
            self.line(depth, "}");
        } else if roll < 6 && depth < MAX_IF_DEPTH {
            let c = self.cond();
            self.line(depth, &format!("if ({}) {{", c));
            self.block(depth + 1, nest, guards);
            if self.rng.gen_bool(0.5) {
                self.line(depth, "} else {");
                self.block(depth + 1, nest, guards);
            }
            self.line(depth, "}");
        } else if let Some(&v) = free.choose(&mut self.rng) {
            let e = self.expr();
            self.line(depth, &format!("{} = {};", v, e));
        } else {
            self.line(depth, "skip;");
        }
    }

    // Single variable: loops only ever increase `x`, in the style of the
    // running example.
    fn single_block(&mut self, depth: usize, nest: usize, in_loop: bool) {
        let n = self.rng.gen_range(1..=2);
        for _ in 0..n {
            self.single_stmt(depth, nest, in_loop);
        }
        if in_loop {
            let c = self.rng.gen_range(1..=10);
            self.line(depth, &format!("x = x + {};", c));
        }
    }

    fn single_stmt(&mut self, depth: usize, nest: usize, in_loop: bool) {
        let roll = self.rng.gen_range(0..10);
        if self.loops_left > 0 && nest < self.max_depth && roll < 4 {
            self.loops_left -= 1;
            let hi = self.rng.gen_range(0..=120);
            self.line(depth, &format!("while (x < {}) {{", hi));
            self.single_block(depth + 1, nest + 1, true);
            self.line(depth, "}");
        } else if roll < 7 && depth < MAX_IF_DEPTH {
            let op = *OPS.choose(&mut self.rng).expect("nonempty");
            let c = self.rng.gen_range(-10..=100);
            self.line(depth, &format!("if (x {} {}) {{", op, c));
            self.single_block(depth + 1, nest, in_loop);
            self.line(depth, "} else {");
            self.single_block(depth + 1, nest, in_loop);
            self.line(depth, "}");
        } else if in_loop {
            let c = self.rng.gen_range(0..=5);
            self.line(depth, &format!("x = x + {};", c));
        } else {
            let s = match self.rng.gen_range(0..4) {
                0 => format!("x = {};", self.small()),
                1 => format!("x = x + {};", self.small()),
                2 => "x = 2 * x;".to_string(),
                _ => "x = -x;".to_string(),
            };
            self.line(depth, &s);
        }
    }
}

/// One program for `seed`.
pub fn generate(seed: u64, shape: Shape) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nvars = if shape.single_var {
        1
    } else {
        rng.gen_range(1..=shape.max_vars.clamp(1, 3))
    };
    let vars: Vec<&'static str> = if shape.single_var {
        vec!["x"]
    } else {
        NAMES[..nvars].to_vec()
    };
    let mut g = Gen {
        rng,
        vars,
        out: String::new(),
        loops_left: 3,
        max_depth: shape.max_depth,
    };
    g.out.push_str(&format!(
        "// generated, seed {}\nint {};\n",
        seed,
        g.vars.join(", ")
    ));
    let havoc = g.rng.gen_range(0..g.vars.len() + 2);
    for i in 0..g.vars.len() {
        let v = g.vars[i];
        if i == havoc {
            g.out.push_str(&format!("havoc {};\n", v));
        } else {
            let c = g.small();
            g.out.push_str(&format!("{} = {};\n", v, c));
        }
    }
    if shape.single_var {
        g.single_block(0, 0, false);
    } else {
        let mut guards = Vec::new();
        g.block(0, 0, &mut guards);
        g.block(0, 0, &mut guards);
    }
    g.out
}

/// `n` programs from consecutive seeds starting at `seed`.
pub fn corpus(seed: u64, n: usize, shape: Shape) -> Vec<String> {
    (0..n as u64).map(|i| generate(seed + i, shape)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use descend_core::frontend::{build_cfg, parse, select_widening_points};

    #[test]
    fn generated_programs_parse_and_respect_the_shape() {
        for shape in [Shape::default(), Shape::single()] {
            for src in corpus(1, 300, shape) {
                let p = parse(&src).unwrap_or_else(|e| panic!("{}\n{}", e, src));
                assert!(p.vars.len() <= 3);
                assert!(src.matches("havoc").count() <= 1);
                let cfg = build_cfg(&p);
                assert!(select_widening_points(&cfg).len() <= 3);
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(
            generate(42, Shape::default()),
            generate(42, Shape::default())
        );
        assert_ne!(
            generate(42, Shape::default()),
            generate(43, Shape::default())
        );
    }
}
