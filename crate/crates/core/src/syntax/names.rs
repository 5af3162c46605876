//! Variable names, fresh-name generation and the bound-variable environment
//! used by α-equivalence.

use std::collections::BTreeSet;

/// Prefix reserved for the type variables `α_X` that stand for second-order
/// variables. User type variables never start with it.
pub const PRED_TYPE_PREFIX: char = '$';

/// The image `α_X` of a second-order variable `X` under the fixed injection
/// into type variables.
pub fn pred_type_var(x: &str) -> String {
    format!("{PRED_TYPE_PREFIX}{x}")
}

/// Inverse of [`pred_type_var`], when the name lies in the reserved namespace.
pub fn pred_of_type_var(a: &str) -> Option<&str> {
    a.strip_prefix(PRED_TYPE_PREFIX)
}

/// Appends primes to `base` until the candidate is not rejected by `taken`.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let mut candidate = format!("{base}'");
    while taken(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// Fresh name avoiding every member of `avoid`.
pub fn fresh_avoiding(base: &str, avoid: &BTreeSet<String>) -> String {
    fresh_name(base, |c| avoid.contains(c))
}

#[derive(Default, Debug)]
struct Scope(Vec<(String, String)>);

impl Scope {
    fn same(&self, a: &str, b: &str) -> bool {
        for (l, r) in self.0.iter().rev() {
            if l == a || r == b {
                return l == a && r == b;
            }
        }
        a == b
    }
}

/// Paired binder stacks, one per variable sort, for comparing two trees up
/// to renaming of bound variables.
#[derive(Default, Debug)]
pub struct AlphaEnv {
    ty: Scope,
    fo: Scope,
    so: Scope,
}

impl AlphaEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn with_ty<R>(&mut self, a: &str, b: &str, f: impl FnOnce(&mut Self) -> R) -> R {
        self.ty.0.push((a.to_string(), b.to_string()));
        let r = f(self);
        self.ty.0.pop();
        r
    }

    pub(crate) fn with_fo<R>(&mut self, a: &str, b: &str, f: impl FnOnce(&mut Self) -> R) -> R {
        self.fo.0.push((a.to_string(), b.to_string()));
        let r = f(self);
        self.fo.0.pop();
        r
    }

    pub(crate) fn with_so<R>(&mut self, a: &str, b: &str, f: impl FnOnce(&mut Self) -> R) -> R {
        self.so.0.push((a.to_string(), b.to_string()));
        let r = f(self);
        self.so.0.pop();
        r
    }

    pub(crate) fn ty_same(&self, a: &str, b: &str) -> bool {
        self.ty.same(a, b)
    }

    pub(crate) fn fo_same(&self, a: &str, b: &str) -> bool {
        self.fo.same(a, b)
    }

    pub(crate) fn so_same(&self, a: &str, b: &str) -> bool {
        self.so.same(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_appends_primes() {
        let avoid: BTreeSet<String> = ["g'".to_string()].into_iter().collect();
        assert_eq!(fresh_avoiding("g", &avoid), "g''");
        assert_eq!(fresh_avoiding("h", &avoid), "h'");
    }

    #[test]
    fn injection_is_invertible() {
        assert_eq!(pred_of_type_var(&pred_type_var("X")), Some("X"));
        assert_eq!(pred_of_type_var("alpha"), None);
    }
}
