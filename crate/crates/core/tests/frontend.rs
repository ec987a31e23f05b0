use descend_core::frontend::{
    build_cfg, parse, select_widening_points, Cfg, NodeId, ParseErrorKind, Pos, Transfer,
};

const RUNNING: &str = "int main() {
	int x = 0;
	while (x < 100)
	if (x < 50)
		x = x + 2;
	else
		x = x + 10;
}";

const FIB: &str = "int main() {
  int N = 7;
  int P = 0, F = 1;
  for (int K = 2; K < N; ++K) {
    int tmp = F;
    F += P;
    P = tmp;
  }
}";

const NESTED: &str = "int i, j, s;
i = 0; s = 0;
while (i < 10) {
  j = 0;
  while (j < i) { s = s + j; j = j + 1; }
  if (s > 20) { s = 0; }
  i = i + 1;
}";

/// Removing the widening points must leave an acyclic graph (Kahn's
/// algorithm consumes every remaining node).
fn is_cutset(cfg: &Cfg, wp: &[NodeId]) -> bool {
    let keep: Vec<bool> = cfg.nodes().map(|n| !wp.contains(&n)).collect();
    let mut indeg = vec![0usize; cfg.node_count];
    for e in &cfg.edges {
        if keep[e.source.0] && keep[e.target.0] {
            indeg[e.target.0] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..cfg.node_count)
        .filter(|&i| keep[i] && indeg[i] == 0)
        .collect();
    let mut seen = 0;
    while let Some(n) = ready.pop() {
        seen += 1;
        for e in cfg.edges.iter().filter(|e| e.source.0 == n) {
            if keep[e.target.0] {
                indeg[e.target.0] -= 1;
                if indeg[e.target.0] == 0 {
                    ready.push(e.target.0);
                }
            }
        }
    }
    seen == keep.iter().filter(|&&k| k).count()
}

#[test]
fn running_example_shape() {
    let cfg = build_cfg(&parse(RUNNING).unwrap());
    assert_eq!(cfg.node_count, 6);
    assert_eq!(cfg.edges.len(), 7);
    assert_eq!(cfg.entry, NodeId(0));
    assert_eq!(cfg.exit.number(), 6);
    // x2 joins the initialization with both branches.
    let into_x2: Vec<usize> = cfg
        .edges
        .iter()
        .filter(|e| e.target.number() == 2)
        .map(|e| e.source.number())
        .collect();
    assert_eq!(into_x2.len(), 3);
    for src in [1, 4, 5] {
        assert!(into_x2.contains(&src));
    }
    let wp = select_widening_points(&cfg);
    assert_eq!(wp.0, vec![NodeId::from_number(2).unwrap()]);
    assert!(is_cutset(&cfg, &wp.0));
    // The post-guard node x3 is also a valid cut.
    assert!(is_cutset(&cfg, &[NodeId::from_number(3).unwrap()]));
    assert!(!is_cutset(&cfg, &[]));
}

#[test]
fn fib_shape() {
    let p = parse(FIB).unwrap();
    assert_eq!(p.vars, vec!["N", "P", "F", "K", "tmp"]);
    let cfg = build_cfg(&p);
    assert_eq!(cfg.node_count, 10);
    let wp = select_widening_points(&cfg);
    assert_eq!(wp.0, vec![NodeId(4)]);
    // The node after the loop guard, where the source comment sits.
    let guard = cfg
        .edges
        .iter()
        .find(|e| {
            matches!(&e.transfer, Transfer::Assume(_))
                && e.source == NodeId(4)
                && e.target != cfg.exit
        })
        .unwrap();
    assert_eq!(guard.target, NodeId(5));
    assert!(is_cutset(&cfg, &[NodeId(5)]));
}

#[test]
fn nested_loops_get_one_point_each() {
    let cfg = build_cfg(&parse(NESTED).unwrap());
    let wp = select_widening_points(&cfg);
    assert_eq!(wp.len(), 2);
    assert!(is_cutset(&cfg, &wp.0));
}

#[test]
fn straight_line_has_no_widening_points() {
    let cfg = build_cfg(&parse("int a, b; a = 1; b = a + 1; a = b;").unwrap());
    assert_eq!(cfg.node_count, 4);
    assert!(select_widening_points(&cfg).is_empty());
    let empty = build_cfg(&parse("").unwrap());
    assert_eq!(empty.node_count, 2);
    assert!(select_widening_points(&empty).is_empty());
}

#[test]
fn nodes_are_in_reverse_postorder() {
    for src in [RUNNING, FIB, NESTED] {
        let cfg = build_cfg(&parse(src).unwrap());
        // Every edge goes forward except edges into a widening point.
        let wp = select_widening_points(&cfg);
        for e in &cfg.edges {
            assert!(e.source < e.target || wp.contains(e.target), "{:?}", e);
        }
    }
}

#[test]
fn error_positions() {
    let e = parse("int x;\nx = y + 1;").unwrap_err();
    assert_eq!(e.pos, Pos { line: 2, col: 5 });
    assert!(matches!(e.kind, ParseErrorKind::Undeclared(ref v) if v == "y"));
    let e = parse("int x;\nwhile (x < 3 { }").unwrap_err();
    assert_eq!(e.pos.line, 2);
    assert!(matches!(e.kind, ParseErrorKind::Syntax { .. }));
    for src in ["int x; x = x / 2;", "int x; x = 0.5;", "double d;"] {
        assert!(
            matches!(parse(src).unwrap_err().kind, ParseErrorKind::NonInteger(_)),
            "{}",
            src
        );
    }
    assert!(parse("int x; int x;").is_err());
}

#[test]
fn dot_mentions_every_edge() {
    let cfg = build_cfg(&parse(RUNNING).unwrap());
    let dot = cfg.to_dot();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), cfg.edges.len());
    assert!(dot.contains("assume x < 100"));
}
