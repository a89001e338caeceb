//! Symbolic computation in `U_q^+(g)`.
//!
//! Elements are kept in the shuffle model (see [`crate::shuffle`]). Lusztig
//! symmetries act on the free algebra first and are pushed to the model once
//! at the end.

mod lusztig;
mod mixed;
mod pbw;
mod verify;

use serde::Serialize;

pub use crate::shuffle::{ShuffleAlgebra, ShuffleElement, UqError};
pub use lusztig::{
    generator_image_free, lusztig_t_free, root_vector, root_vectors, t_word_free, RootVectorOptions,
    Route,
};
pub use mixed::{lusztig_t, MixedElement, MixedKey};
pub use pbw::{pbw_expand, IntervalSubalgebra, PbwExpansion};
pub use verify::{
    g2_generators, verify_f4_lemmas, verify_g2_relations, Certificate, F4Generators, F4Report, F4Which,
    G2Nesting, G2Report, IdentityStatus, TierReport,
};

use crate::scalar::QScalar;
use crate::words::{Word, WordComb};

/// Formal expression over `E_1, ..., E_r`.
#[derive(Debug, Clone, PartialEq)]
pub enum GenExpr {
    Gen(u8),
    Scalar(QScalar, Box<GenExpr>),
    Sum(Vec<GenExpr>),
    Product(Vec<GenExpr>),
    Bracket(Box<GenExpr>, Box<GenExpr>),
}

impl GenExpr {
    pub fn gen(i: u8) -> GenExpr {
        GenExpr::Gen(i)
    }

    pub fn scaled(s: QScalar, x: GenExpr) -> GenExpr {
        GenExpr::Scalar(s, Box::new(x))
    }

    pub fn bracket(x: GenExpr, y: GenExpr) -> GenExpr {
        GenExpr::Bracket(Box::new(x), Box::new(y))
    }

    pub fn product(xs: Vec<GenExpr>) -> GenExpr {
        GenExpr::Product(xs)
    }

    pub fn sum(xs: Vec<GenExpr>) -> GenExpr {
        GenExpr::Sum(xs)
    }

    /// Right-nested bracket `[E_{a_1}, [E_{a_2}, ... E_{a_k}]]`.
    pub fn right_nested(letters: &[u8]) -> GenExpr {
        let (last, rest) = letters.split_last().expect("nonempty");
        rest.iter()
            .rev()
            .fold(GenExpr::Gen(*last), |acc, &l| GenExpr::bracket(GenExpr::Gen(l), acc))
    }

    /// Left-nested bracket `[[E_{a_1}, E_{a_2}], ... E_{a_k}]`.
    pub fn left_nested(letters: &[u8]) -> GenExpr {
        let (first, rest) = letters.split_first().expect("nonempty");
        rest.iter()
            .fold(GenExpr::Gen(*first), |acc, &l| GenExpr::bracket(acc, GenExpr::Gen(l)))
    }

    /// Q-degree, `None` if some node is inhomogeneous in the obvious sense.
    pub fn degree(&self, rank: usize) -> Option<Vec<i64>> {
        match self {
            GenExpr::Gen(i) => {
                let mut v = vec![0; rank];
                v[*i as usize - 1] = 1;
                Some(v)
            }
            GenExpr::Scalar(_, x) => x.degree(rank),
            GenExpr::Sum(xs) => {
                let mut it = xs.iter();
                let d = it.next()?.degree(rank)?;
                for x in it {
                    if x.degree(rank)? != d {
                        return None;
                    }
                }
                Some(d)
            }
            GenExpr::Product(xs) => {
                let mut d = vec![0; rank];
                for x in xs {
                    for (a, b) in d.iter_mut().zip(x.degree(rank)?) {
                        *a += b;
                    }
                }
                Some(d)
            }
            GenExpr::Bracket(x, y) => {
                let mut d = x.degree(rank)?;
                for (a, b) in d.iter_mut().zip(y.degree(rank)?) {
                    *a += b;
                }
                Some(d)
            }
        }
    }
}

/// Normal form of a formal expression.
pub fn canonical(alg: &ShuffleAlgebra, expr: &GenExpr) -> Result<ShuffleElement, UqError> {
    Ok(match expr {
        GenExpr::Gen(i) => {
            if *i == 0 || *i as usize > alg.rank() {
                return Err(UqError::Other(format!("generator index {i} out of range")));
            }
            alg.generator(*i)
        }
        GenExpr::Scalar(s, x) => canonical(alg, x)?.scale(s),
        GenExpr::Sum(xs) => {
            let mut acc = WordComb::zero();
            for x in xs {
                acc.add_assign(&canonical(alg, x)?);
            }
            acc.reduce();
            acc
        }
        GenExpr::Product(xs) => {
            let mut acc = WordComb::one();
            for x in xs {
                acc = alg.mul(&acc, &canonical(alg, x)?);
            }
            acc
        }
        GenExpr::Bracket(x, y) => alg.q_commutator(&canonical(alg, x)?, &canonical(alg, y)?)?,
    })
}

/// One term of a serialized canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalTerm {
    pub word: Vec<u8>,
    pub coef: QScalar,
}

/// Sorted term list, used for JSON output.
pub fn canonical_terms(x: &ShuffleElement) -> Vec<CanonicalTerm> {
    x.canonical_terms()
        .into_iter()
        .map(|(w, c)| CanonicalTerm {
            word: w.letters(),
            coef: c,
        })
        .collect()
}

/// Inverse of [`canonical_terms`].
pub fn from_canonical_terms(terms: &[CanonicalTerm]) -> ShuffleElement {
    let v: Vec<(Word, QScalar)> = terms
        .iter()
        .map(|t| (Word::from_letters(&t.word), t.coef.clone()))
        .collect();
    WordComb::from_qterms(&v)
}

/// `[E_i, E_j]`-style q-commutator of shuffle elements, exposed as a free function.
pub fn q_commutator(alg: &ShuffleAlgebra, x: &ShuffleElement, y: &ShuffleElement) -> Result<ShuffleElement, UqError> {
    alg.q_commutator(x, y)
}
