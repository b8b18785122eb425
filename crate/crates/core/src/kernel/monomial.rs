use std::cmp::Ordering;

/// Exponent vector, one entry per variable of the owning table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, provided `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term orders on monomials of a fixed table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic with the table order as priority.
    #[default]
    Lex,
    /// Graded reverse lexicographic.
    Grevlex,
    /// Elimination order: the variables whose indices are listed come first.
    /// Any monomial containing one of them is larger than every monomial free
    /// of them. Each block is ordered by grevlex.
    Block { front: Vec<usize> },
}

fn grevlex_on(
    a: &[u32],
    b: &[u32],
    idx: impl DoubleEndedIterator<Item = usize> + Clone,
) -> Ordering {
    let da: u32 = idx.clone().map(|i| a[i]).sum();
    let db: u32 = idx.clone().map(|i| b[i]).sum();
    da.cmp(&db).then_with(|| {
        for i in idx.rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                // Smaller trailing exponent wins in grevlex.
                other => return other.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn block(front: impl IntoIterator<Item = usize>) -> Self {
        let mut front: Vec<usize> = front.into_iter().collect();
        front.sort_unstable();
        front.dedup();
        MonomialOrder::Block { front }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (&a.0, &b.0);
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => grevlex_on(a, b, 0..a.len()),
            MonomialOrder::Block { front } => {
                let back: Vec<usize> = (0..a.len()).filter(|i| !front.contains(i)).collect();
                grevlex_on(a, b, front.iter().copied())
                    .then_with(|| grevlex_on(a, b, back.iter().copied()))
            }
        }
    }

    /// Whether the order eliminates the given variables, i.e. it is a block
    /// order whose front block is exactly `vars`, or lex with `vars` leading.
    pub fn eliminates(&self, vars: &[usize]) -> bool {
        match self {
            MonomialOrder::Block { front } => {
                let mut v = vars.to_vec();
                v.sort_unstable();
                v.dedup();
                *front == v
            }
            MonomialOrder::Lex => {
                let mut v = vars.to_vec();
                v.sort_unstable();
                v.dedup();
                v.iter().enumerate().all(|(k, &i)| k == i)
            }
            MonomialOrder::Grevlex => vars.is_empty(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn lex_and_grevlex_differ_as_expected() {
        // x*z^2 vs y^3 in (x, y, z)
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 3, 0]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        // same degree: grevlex compares the last exponent, smaller wins
        assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Less);
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&m(&[0, 0, 4]), &b),
            Ordering::Greater
        );
    }

    #[test]
    fn block_order_ranks_front_variables_first() {
        let ord = MonomialOrder::block([2]);
        // z beats any monomial free of z, whatever its degree
        assert_eq!(ord.cmp(&m(&[0, 0, 1]), &m(&[5, 7, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert!(ord.eliminates(&[2]));
        assert!(!ord.eliminates(&[1]));
    }
}
