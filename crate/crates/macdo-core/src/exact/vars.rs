//! Ordered generator sets for the exact layer.
//!
//! Every Laurent polynomial carries a shared, ordered list of generators.
//! The first two generators are always `q` and `tau`, where `tau` is a
//! formal square root of `t` (so `t = tau^2` and half-integer powers of `t`
//! are ordinary integer powers of `tau`).  Main variables follow in
//! declaration order.  Monomials compare in graded lexicographic order with
//! respect to this generator order.

use std::sync::Arc;

/// Index of `q` in every generator set.
pub const Q: usize = 0;
/// Index of `tau` (the square root of `t`) in every generator set.
pub const TAU: usize = 1;

/// An immutable, ordered list of generator names.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

/// Shared handle to a generator set.
pub type Vars = Arc<VarSet>;

impl VarSet {
    /// Generator set `q, tau, <mains...>`.
    ///
    /// Panics if a main variable is named `q` or `tau`, or if names repeat.
    pub fn with_mains(mains: &[&str]) -> Vars {
        let mut names = vec!["q".to_string(), "tau".to_string()];
        for m in mains {
            assert!(
                *m != "q" && *m != "tau",
                "main variable may not shadow q or tau"
            );
            assert!(
                !names.iter().any(|n| n == m),
                "duplicate variable name {m}"
            );
            names.push((*m).to_string());
        }
        Arc::new(VarSet { names })
    }

    /// Generator set containing only `q` and `tau`.
    pub fn coefficients() -> Vars {
        Self::with_mains(&[])
    }

    /// Generator set `q, tau, x1..xn`.
    pub fn x_vars(n: usize) -> Vars {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Self::with_mains(&refs)
    }

    /// Generator set `q, tau, y1..yn`.
    pub fn y_vars(n: usize) -> Vars {
        let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Self::with_mains(&refs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of main variables (everything after `q` and `tau`).
    pub fn main_count(&self) -> usize {
        self.names.len() - 2
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// True when two handles denote the same generator set.
pub fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
