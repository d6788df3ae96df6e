//! Sparse exact elimination over the rationals.
//!
//! Columns are fed one at a time in a fixed order; each is reduced against
//! the pivots found so far by fraction-free cross-multiplication (pivot
//! columns are kept as primitive integer vectors, so the elimination steps
//! are integer operations). A column that reduces to zero is dependent and
//! the combination over the previously fed columns is returned; otherwise
//! its leading coordinate becomes a new pivot. Pivoting order therefore
//! follows the feeding order, which callers tie to the deterministic basis
//! enumeration.

use std::collections::BTreeMap;

use num::integer::Integer;
use num::traits::{One, Signed, Zero};
use num::BigInt;

use crate::rational::Rational;

struct Pivot<K> {
    col: BTreeMap<K, BigInt>,
    combo: Vec<(usize, Rational)>,
}

/// An incrementally built column space with dependency witnesses.
pub struct ColumnSpace<K: Ord + Clone> {
    pivots: BTreeMap<K, Pivot<K>>,
    rank: usize,
}

/// What happened when a column was fed in.
pub enum InsertOutcome {
    Independent,
    /// The column is a combination of earlier ones: the witness lists
    /// `(label, coefficient)` pairs, including the fed column itself with
    /// coefficient 1, summing to zero under the column map.
    Dependent(Vec<(usize, Rational)>),
}

impl<K: Ord + Clone> Default for ColumnSpace<K> {
    fn default() -> Self {
        ColumnSpace {
            pivots: BTreeMap::new(),
            rank: 0,
        }
    }
}

impl<K: Ord + Clone> ColumnSpace<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Feed the column `label`; the label is what dependency witnesses
    /// refer to.
    pub fn insert(&mut self, label: usize, column: &BTreeMap<K, Rational>) -> InsertOutcome {
        let (mut col, scale) = clear_denominators(column);
        let mut combo: Vec<(usize, Rational)> = vec![(label, scale)];
        self.reduce_in_place(&mut col, &mut combo);
        if col.is_empty() {
            normalize_at(&mut combo, label);
            InsertOutcome::Dependent(combo)
        } else {
            let lead = col.keys().next().unwrap().clone();
            self.pivots.insert(lead, Pivot { col, combo });
            self.rank += 1;
            InsertOutcome::Independent
        }
    }

    /// Express the column as a combination of previously inserted columns,
    /// if it lies in their span. The space itself is unchanged.
    pub fn express(&self, column: &BTreeMap<K, Rational>) -> Option<Vec<(usize, Rational)>> {
        let (mut col, scale) = clear_denominators(column);
        // invariant: scale * column = col + sum(combo over pivots)
        let mut combo: Vec<(usize, Rational)> = Vec::new();
        let mut scale = scale;
        while let Some(lead) = col.keys().next().cloned() {
            let pivot = self.pivots.get(&lead)?;
            let a = pivot.col[&lead].clone();
            let b = col[&lead].clone();
            cross_eliminate(&mut col, &a, &pivot.col, &b);
            // scale the invariant by a, then absorb b * pivot.combo
            scale *= big_to_rat(&a);
            for (j, c) in combo.iter_mut() {
                let _ = j;
                *c *= big_to_rat(&a);
            }
            axpy(&mut combo, &big_to_rat(&b), &pivot.combo);
            let g = content(&col);
            if !g.is_one() {
                divide_content(&mut col, &g);
                let gr = big_to_rat(&g);
                scale /= &gr;
                for (_, c) in combo.iter_mut() {
                    *c /= &gr;
                }
            }
        }
        // scale * column = sum(combo): divide through
        let inv = scale;
        Some(
            combo
                .into_iter()
                .map(|(j, c)| (j, c / &inv))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }

    fn reduce_in_place(&self, col: &mut BTreeMap<K, BigInt>, combo: &mut Vec<(usize, Rational)>) {
        while let Some(lead) = col.keys().next().cloned() {
            let Some(pivot) = self.pivots.get(&lead) else {
                return;
            };
            let a = pivot.col[&lead].clone();
            let b = col[&lead].clone();
            cross_eliminate(col, &a, &pivot.col, &b);
            for (_, c) in combo.iter_mut() {
                *c *= big_to_rat(&a);
            }
            axpy(combo, &(-big_to_rat(&b)), &pivot.combo);
            let g = content(col);
            if !g.is_one() {
                divide_content(col, &g);
                let gr = big_to_rat(&g);
                for (_, c) in combo.iter_mut() {
                    *c /= &gr;
                }
            }
        }
    }
}

/// `col <- a * col - b * pivot`, dropping zeros.
fn cross_eliminate<K: Ord + Clone>(
    col: &mut BTreeMap<K, BigInt>,
    a: &BigInt,
    pivot: &BTreeMap<K, BigInt>,
    b: &BigInt,
) {
    for (k, v) in col.iter_mut() {
        let _ = k;
        *v *= a;
    }
    for (k, pv) in pivot {
        let delta = pv * b;
        match col.get_mut(k) {
            Some(v) => {
                *v -= delta;
            }
            None => {
                col.insert(k.clone(), -delta);
            }
        }
    }
    col.retain(|_, v| !v.is_zero());
}

/// `dst <- dst + c * src` on sorted sparse combination vectors.
fn axpy(dst: &mut Vec<(usize, Rational)>, c: &Rational, src: &[(usize, Rational)]) {
    if c.is_zero() {
        return;
    }
    let mut out: Vec<(usize, Rational)> = Vec::with_capacity(dst.len() + src.len());
    let mut i = 0;
    let mut j = 0;
    while i < dst.len() || j < src.len() {
        match (dst.get(i), src.get(j)) {
            (Some((a, _)), Some((b, _))) if a == b => {
                let v = &dst[i].1 + &(c * &src[j].1);
                if !v.is_zero() {
                    out.push((*a, v));
                }
                i += 1;
                j += 1;
            }
            (Some((a, _)), Some((b, _))) if a < b => {
                out.push(dst[i].clone());
                i += 1;
                let _ = a;
            }
            (Some(_), Some(_)) | (None, Some(_)) => {
                out.push((src[j].0, c * &src[j].1));
                j += 1;
            }
            (Some(_), None) => {
                out.push(dst[i].clone());
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    *dst = out;
}

/// Scale a rational column to a primitive integer one; returns the scaled
/// column and the factor it was multiplied by.
fn clear_denominators<K: Ord + Clone>(
    column: &BTreeMap<K, Rational>,
) -> (BTreeMap<K, BigInt>, Rational) {
    let mut lcm = BigInt::one();
    for v in column.values() {
        lcm = lcm.lcm(v.denom());
    }
    let mut col: BTreeMap<K, BigInt> = column
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k.clone(), v.numer() * (&lcm / v.denom())))
        .collect();
    let g = content(&col);
    if !g.is_one() {
        divide_content(&mut col, &g);
    }
    let scale = Rational::new(lcm, g);
    (col, scale)
}

fn content<K>(col: &BTreeMap<K, BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in col.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g.abs()
    }
}

fn divide_content<K>(col: &mut BTreeMap<K, BigInt>, g: &BigInt) {
    for v in col.values_mut() {
        *v /= g;
    }
}

fn big_to_rat(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

/// Divide a combination through so the coefficient at `label` is 1.
fn normalize_at(combo: &mut [(usize, Rational)], label: usize) {
    let lead = combo
        .iter()
        .find(|(j, _)| *j == label)
        .map(|(_, c)| c.clone())
        .expect("fed column always appears in its own witness");
    for (_, c) in combo.iter_mut() {
        *c /= &lead;
    }
}
