//! Reference arithmetic used to judge extracted programs. Deliberately
//! written directly over machine integers, independent of every other
//! module.

use std::fmt;
use std::str::FromStr;

/// Function arguments for the bounded iterators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryRef {
    Id,
    Succ,
    ConstZero,
    ConstOne,
    Double,
}

impl UnaryRef {
    pub const ALL: [UnaryRef; 5] = [UnaryRef::Id, UnaryRef::Succ, UnaryRef::ConstZero, UnaryRef::ConstOne, UnaryRef::Double];

    pub fn eval(self, y: u64) -> u64 {
        match self {
            UnaryRef::Id => y,
            UnaryRef::Succ => y + 1,
            UnaryRef::ConstZero => 0,
            UnaryRef::ConstOne => 1,
            UnaryRef::Double => 2 * y,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            UnaryRef::Id => "id",
            UnaryRef::Succ => "succ",
            UnaryRef::ConstZero => "zero",
            UnaryRef::ConstOne => "one",
            UnaryRef::Double => "double",
        }
    }
}

/// A reference function on naturals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefFunction {
    Plus,
    Mult,
    Pred,
    Minus,
    /// `n ↦ f 0 + … + f (n-1)`
    Sum(UnaryRef),
    /// `n ↦ f 0 · … · f (n-1)`
    Prod(UnaryRef),
    Unary(UnaryRef),
}

impl RefFunction {
    pub fn arity(self) -> usize {
        match self {
            RefFunction::Plus | RefFunction::Mult | RefFunction::Minus => 2,
            RefFunction::Pred | RefFunction::Sum(_) | RefFunction::Prod(_) | RefFunction::Unary(_) => 1,
        }
    }

    /// Evaluates at `args`, whose length must be the arity.
    pub fn eval(self, args: &[u64]) -> u64 {
        assert_eq!(args.len(), self.arity(), "arity of {self}");
        match self {
            RefFunction::Plus => args[0] + args[1],
            RefFunction::Mult => args[0] * args[1],
            RefFunction::Pred => args[0].saturating_sub(1),
            RefFunction::Minus => args[0].saturating_sub(args[1]),
            RefFunction::Sum(f) => (0..args[0]).map(|i| f.eval(i)).sum(),
            RefFunction::Prod(f) => (0..args[0]).map(|i| f.eval(i)).product(),
            RefFunction::Unary(f) => f.eval(args[0]),
        }
    }
}

impl fmt::Display for RefFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefFunction::Plus => write!(f, "plus"),
            RefFunction::Mult => write!(f, "mult"),
            RefFunction::Pred => write!(f, "pred"),
            RefFunction::Minus => write!(f, "minus"),
            RefFunction::Sum(g) => write!(f, "sum:{}", g.name()),
            RefFunction::Prod(g) => write!(f, "prod:{}", g.name()),
            RefFunction::Unary(g) => write!(f, "{}", g.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown reference function `{0}`")]
pub struct UnknownReference(pub String);

impl FromStr for UnaryRef {
    type Err = UnknownReference;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UnaryRef::ALL
            .into_iter()
            .find(|u| u.name() == s)
            .ok_or_else(|| UnknownReference(s.to_string()))
    }
}

impl FromStr for RefFunction {
    type Err = UnknownReference;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || UnknownReference(s.to_string());
        match s.split_once(':') {
            Some(("sum", g)) => Ok(RefFunction::Sum(g.parse().map_err(|_| unknown())?)),
            Some(("prod", g)) => Ok(RefFunction::Prod(g.parse().map_err(|_| unknown())?)),
            Some(_) => Err(unknown()),
            None => match s {
                "plus" => Ok(RefFunction::Plus),
                "mult" => Ok(RefFunction::Mult),
                "pred" => Ok(RefFunction::Pred),
                "minus" => Ok(RefFunction::Minus),
                _ => s.parse().map(RefFunction::Unary).map_err(|_| unknown()),
            },
        }
    }
}

/// All argument tuples of the given arity with entries in `0..=max`.
pub fn grid(arity: usize, max: u64) -> Vec<Vec<u64>> {
    (0..arity).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|prefix| {
                (0..=max).map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect()
    })
}

/// The default sample bound: 6 for up to two arguments, 4 beyond.
pub fn default_max(arity: usize) -> u64 {
    if arity <= 2 {
        6
    } else {
        4
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_values() {
        assert_eq!(RefFunction::Plus.eval(&[3, 4]), 7);
        assert_eq!(RefFunction::Mult.eval(&[3, 4]), 12);
        assert_eq!(RefFunction::Pred.eval(&[0]), 0);
        assert_eq!(RefFunction::Minus.eval(&[2, 5]), 0);
        assert_eq!(RefFunction::Sum(UnaryRef::Id).eval(&[4]), 6);
        assert_eq!(RefFunction::Prod(UnaryRef::Succ).eval(&[3]), 6);
        assert_eq!(RefFunction::Sum(UnaryRef::Double).eval(&[0]), 0);
        assert_eq!(RefFunction::Prod(UnaryRef::ConstZero).eval(&[0]), 1);
    }

    #[test]
    fn names_round_trip() {
        for s in ["plus", "mult", "pred", "minus", "sum:id", "prod:succ", "sum:double", "one"] {
            assert_eq!(s.parse::<RefFunction>().unwrap().to_string(), s);
        }
        assert!("sum".parse::<RefFunction>().is_err());
        assert!("sum:square".parse::<RefFunction>().is_err());
    }

    #[test]
    fn grids_enumerate_all_tuples() {
        assert_eq!(grid(2, 6).len(), 49);
        assert_eq!(grid(0, 6), vec![Vec::<u64>::new()]);
        assert_eq!(grid(1, 2), vec![vec![0], vec![1], vec![2]]);
    }
}
