use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::homalg::scalar::factorial;
use crate::homalg::{Matrix, Scalar};
use crate::{Error, Result, MAX_NIL_INDEX};

/// Linear operations and a Lie bracket on some element type.
pub trait LieOps {
    type Elem: Clone;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, x: &Self::Elem, c: &Scalar) -> Self::Elem;
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
}

/// Square rational matrices under the commutator.
#[derive(Clone, Copy, Debug, Default)]
pub struct MatrixLie;

impl LieOps for MatrixLie {
    type Elem = Matrix;

    fn add(&self, x: &Matrix, y: &Matrix) -> Matrix {
        x.add(y)
    }

    fn scale(&self, x: &Matrix, c: &Scalar) -> Matrix {
        x.scale(c)
    }

    fn bracket(&self, x: &Matrix, y: &Matrix) -> Matrix {
        x.mul(y).sub(&y.mul(x))
    }

    fn is_zero(&self, x: &Matrix) -> bool {
        x.is_zero()
    }
}

/// Word in the letters `x` (false) and `y` (true).
type Word = Vec<bool>;

/// Coefficients of `log(eˣeʸ)` on right-nested brackets `[w₁,[w₂,[…,w_m]]]`, for all
/// words up to length 8 (Dynkin's formula). Words of length at least 2 end in `xy`.
pub fn bch_coefficients() -> &'static BTreeMap<Word, Scalar> {
    static TABLE: OnceLock<BTreeMap<Word, Scalar>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let max = MAX_NIL_INDEX;
        let mut table: BTreeMap<Word, Scalar> = BTreeMap::new();
        // Each block (r, s) with r + s ≥ 1 contributes xʳyˢ.
        fn go(
            blocks: &mut Vec<(usize, usize)>,
            remaining: usize,
            max: usize,
            table: &mut BTreeMap<Word, Scalar>,
        ) {
            if !blocks.is_empty() {
                let n = blocks.len();
                let m = max - remaining;
                let mut word = Vec::with_capacity(m);
                let mut denom = Scalar::from_integer(((n * m) as i64).into());
                for &(r, s) in blocks.iter() {
                    word.extend(std::iter::repeat(false).take(r));
                    word.extend(std::iter::repeat(true).take(s));
                    denom *= factorial(r) * factorial(s);
                }
                // Right-nested brackets ending in two equal letters vanish; those ending
                // in yx are folded onto xy.
                if m == 1 || word[m - 1] != word[m - 2] {
                    let mut sign = if n % 2 == 1 { Scalar::one() } else { -Scalar::one() };
                    if m > 1 && !word[m - 1] {
                        word[m - 2] = false;
                        word[m - 1] = true;
                        sign = -sign;
                    }
                    *table.entry(word).or_insert_with(Scalar::zero) += sign / denom;
                }
            }
            for total in 1..=remaining {
                for r in 0..=total {
                    blocks.push((r, total - r));
                    go(blocks, remaining - total, max, table);
                    blocks.pop();
                }
            }
        }
        go(&mut Vec::new(), max, max, &mut table);
        table.retain(|_, c| !c.is_zero());
        table
    })
}

/// `x • y = log(eˣeʸ)`, keeping bracket words of length at most `nil_index`.
///
/// Exact whenever all brackets of weight above `nil_index` vanish.
pub fn bch<O: LieOps>(ops: &O, x: &O::Elem, y: &O::Elem, nil_index: usize) -> Result<O::Elem> {
    if nil_index > MAX_NIL_INDEX {
        return Err(Error::unsupported(format!(
            "nilpotency index {nil_index} exceeds the BCH table weight {MAX_NIL_INDEX}"
        )));
    }
    let zero = ops.scale(x, &Scalar::zero());
    let mut cache: HashMap<Word, O::Elem> = HashMap::new();
    let mut out = zero.clone();
    for (word, c) in bch_coefficients() {
        if word.len() > nil_index {
            continue;
        }
        let v = nested(ops, x, y, word, &mut cache);
        if !ops.is_zero(&v) {
            out = ops.add(&out, &ops.scale(&v, c));
        }
    }
    Ok(out)
}

fn nested<O: LieOps>(
    ops: &O,
    x: &O::Elem,
    y: &O::Elem,
    word: &[bool],
    cache: &mut HashMap<Word, O::Elem>,
) -> O::Elem {
    if let Some(v) = cache.get(word) {
        return v.clone();
    }
    let letter = if word[0] { y } else { x };
    let v = if word.len() == 1 {
        letter.clone()
    } else {
        let inner = nested(ops, x, y, &word[1..], cache);
        if ops.is_zero(&inner) {
            inner
        } else {
            ops.bracket(letter, &inner)
        }
    };
    cache.insert(word.to_vec(), v.clone());
    v
}
