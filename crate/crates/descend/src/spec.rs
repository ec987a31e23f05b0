//! Small textual formats used on the command line.

use descend_core::fixpoint::AnalysisConfig;
use descend_core::frontend::NodeId;
use descend_core::galois::DomainId;

use crate::Error;

fn domain(s: &str) -> Result<DomainId, Error> {
    DomainId::parse(s).ok_or_else(|| {
        let known: Vec<&str> = DomainId::ALL.iter().map(|d| d.name()).collect();
        Error::Usage(format!(
            "unknown domain `{}` (expected one of {})",
            s,
            known.join(", ")
        ))
    })
}

/// An analysis setup written `ASC[:DESC][/K]`, e.g. `box`, `itv:iset` or
/// `box:bset/10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainSpec {
    pub ascending: DomainId,
    pub descending: DomainId,
    pub k: Option<usize>,
}

impl DomainSpec {
    pub fn parse(s: &str) -> Result<DomainSpec, Error> {
        let (doms, k) = match s.split_once('/') {
            Some((d, k)) => {
                let k = k
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad iteration count in `{}`", s)))?;
                (d, Some(k))
            }
            None => (s, None),
        };
        let (ascending, descending) = match doms.split_once(':') {
            Some((a, d)) => (domain(a)?, domain(d)?),
            None => {
                let a = domain(doms)?;
                (a, a)
            }
        };
        Ok(DomainSpec {
            ascending,
            descending,
            k,
        })
    }

    pub fn config(&self, default_k: usize) -> AnalysisConfig {
        AnalysisConfig::new(self.ascending, self.descending).with_k(self.k.unwrap_or(default_k))
    }

    pub fn label(&self) -> String {
        let mut s = self.ascending.name().to_string();
        if self.descending != self.ascending {
            s.push(':');
            s.push_str(self.descending.name());
        }
        if let Some(k) = self.k {
            s.push_str(&format!("/{}", k));
        }
        s
    }
}

/// Parses `3,x5`: node numbers with an optional `x` prefix.
pub fn widening_points(s: &str) -> Result<Vec<NodeId>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.strip_prefix('x')
                .unwrap_or(t)
                .parse::<usize>()
                .ok()
                .and_then(NodeId::from_number)
                .ok_or_else(|| Error::Usage(format!("bad node `{}` in widening point list", t)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_specs() {
        let s = DomainSpec::parse("box:bset/10").unwrap();
        assert_eq!(
            s,
            DomainSpec {
                ascending: DomainId::Box,
                descending: DomainId::BSet,
                k: Some(10)
            }
        );
        assert_eq!(s.label(), "box:bset/10");
        assert_eq!(DomainSpec::parse("itv").unwrap().label(), "itv");
        assert!(DomainSpec::parse("oct").is_err());
        assert!(DomainSpec::parse("box/x").is_err());
    }

    #[test]
    fn node_lists() {
        assert_eq!(
            widening_points("3, x5").unwrap(),
            vec![NodeId(2), NodeId(4)]
        );
        assert!(widening_points("x0").is_err());
        assert!(widening_points("y").is_err());
    }
}
