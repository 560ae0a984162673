use crate::exactalg::Monomial;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Order used inside one block of a block order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseOrder {
    GrevLex,
    Lex,
}

/// Term order. Variable `x0` is the largest variable in every order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// Variables `0..split` form the first block and are eliminated: any
    /// monomial involving them beats every monomial that does not.
    Block {
        split: usize,
        first: BaseOrder,
        second: BaseOrder,
    },
}

impl MonomialOrder {
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block {
            split,
            first: BaseOrder::GrevLex,
            second: BaseOrder::GrevLex,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block {
                split,
                first,
                second,
            } => base(first, &a[..split], &b[..split])
                .then_with(|| base(second, &a[split..], &b[split..])),
        }
    }

    /// Short stable name, used for cache keys.
    pub fn tag(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block {
                split,
                first,
                second,
            } => format!("block{split}:{first:?}:{second:?}"),
        }
    }
}

fn base(o: BaseOrder, a: &[u32], b: &[u32]) -> Ordering {
    match o {
        BaseOrder::GrevLex => grevlex(a, b),
        BaseOrder::Lex => a.cmp(b),
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        // x0*x2 < x1^2 in grevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_first_block() {
        let o = MonomialOrder::elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn multiplicative() {
        let o = MonomialOrder::GrevLex;
        let (a, b, c) = (m(&[2, 0, 1]), m(&[1, 2, 0]), m(&[0, 1, 3]));
        assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
    }
}
