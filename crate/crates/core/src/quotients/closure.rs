use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::residue_rep::{ResidueMatrix, ResidueOps};
use crate::cyclo::fq::{ExtField, SmallField};
use crate::cyclo::ResidueField;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    Complete { order: u64 },
    CapExceeded { visited: u64 },
    /// Stopped on purpose after reaching a set of target elements.
    Stopped { visited: u64 },
}

impl fmt::Display for ClosureStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureStatus::Complete { .. } => f.write_str("complete"),
            ClosureStatus::CapExceeded { .. } => f.write_str("undecided"),
            ClosureStatus::Stopped { .. } => f.write_str("partial"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub status: ClosureStatus,
    pub elements: u64,
    /// Number of elements of each order, when requested and complete.
    pub histogram: Option<BTreeMap<u64, u64>>,
}

impl ClosureResult {
    pub fn order(&self) -> Option<u64> {
        match self.status {
            ClosureStatus::Complete { order } => Some(order),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    pub cap: u64,
    /// Work modulo scalars: each element is scaled so that its first
    /// nonzero entry is 1.
    pub projective: bool,
    pub histogram: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { cap: DEFAULT_CAP, projective: false, histogram: false }
    }
}

/// `|GL(n, s)|`.
pub fn gl_order(n: usize, s: u64) -> BigUint {
    let s = BigUint::from(s);
    let sn = s.pow(n as u32);
    (0..n).fold(BigUint::one(), |acc, k| acc * (&sn - s.pow(k as u32)))
}

/// A matrix packed into an integer, `bits` bits per entry in reading order
/// starting from the least significant end. Nonzero for invertible
/// matrices, so zero marks an empty slot.
trait Key: Copy + Eq + Default {
    const BITS: usize;
    fn pack(entries: &[u32], bits: u32) -> Self;
    fn unpack(self, bits: u32, out: &mut [u32]);
    fn mix(self) -> u64;
}

impl Key for u64 {
    const BITS: usize = 64;

    fn pack(entries: &[u32], bits: u32) -> Self {
        entries.iter().rev().fold(0, |acc, &x| (acc << bits) | x as u64)
    }

    fn unpack(self, bits: u32, out: &mut [u32]) {
        let mask = (1u64 << bits) - 1;
        for (k, x) in out.iter_mut().enumerate() {
            *x = ((self >> (k as u32 * bits)) & mask) as u32;
        }
    }

    fn mix(self) -> u64 {
        let h = (self ^ (self >> 31)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        h ^ (h >> 29)
    }
}

impl Key for u128 {
    const BITS: usize = 128;

    fn pack(entries: &[u32], bits: u32) -> Self {
        entries.iter().rev().fold(0, |acc, &x| (acc << bits) | x as u128)
    }

    fn unpack(self, bits: u32, out: &mut [u32]) {
        let mask = (1u128 << bits) - 1;
        for (k, x) in out.iter_mut().enumerate() {
            *x = ((self >> (k as u32 * bits)) & mask) as u32;
        }
    }

    fn mix(self) -> u64 {
        ((self as u64) ^ ((self >> 64) as u64).rotate_left(23)).mix()
    }
}

/// Open-addressing set with linear probing, plus the elements in insertion
/// order.
struct Visited<K> {
    bits: u32,
    order: Vec<K>,
    slots: Vec<K>,
}

impl<K: Key> Visited<K> {
    fn new(bits: u32) -> Self {
        Visited { bits, order: Vec::new(), slots: vec![K::default(); 1 << 10] }
    }

    fn probe(slots: &[K], k: K) -> (usize, bool) {
        let mask = slots.len() - 1;
        let mut i = k.mix() as usize & mask;
        loop {
            let s = slots[i];
            if s == k {
                return (i, true);
            }
            if s == K::default() {
                return (i, false);
            }
            i = (i + 1) & mask;
        }
    }

    fn grow(&mut self) {
        let mut slots = vec![K::default(); self.slots.len() * 2];
        for &k in &self.order {
            let (i, _) = Self::probe(&slots, k);
            slots[i] = k;
        }
        self.slots = slots;
    }
}

trait Store {
    fn insert(&mut self, m: &[u32]) -> bool;
    fn contains(&self, m: &[u32]) -> bool;
    fn len(&self) -> usize;
    fn get(&self, i: usize, out: &mut [u32]);
}

impl<K: Key> Store for Visited<K> {
    fn insert(&mut self, m: &[u32]) -> bool {
        let k = K::pack(m, self.bits);
        let (i, found) = Self::probe(&self.slots, k);
        if found {
            return false;
        }
        self.slots[i] = k;
        self.order.push(k);
        if self.order.len() * 10 > self.slots.len() * 7 {
            self.grow();
        }
        true
    }

    fn contains(&self, m: &[u32]) -> bool {
        Self::probe(&self.slots, K::pack(m, self.bits)).1
    }

    fn len(&self) -> usize {
        self.order.len()
    }

    fn get(&self, i: usize, out: &mut [u32]) {
        self.order[i].unpack(self.bits, out);
    }
}

/// Breadth-first closure of a set of invertible matrices over a small
/// finite field. Elements are visited in a deterministic order: the
/// identity, then products `x g` for `x` in visit order and `g` in generator
/// order.
pub struct Closure {
    field: SmallField,
    n: usize,
    projective: bool,
    store: Box<dyn Store>,
    gens: Vec<Vec<u32>>,
    result: ClosureResult,
}

impl fmt::Debug for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Closure").field("n", &self.n).field("result", &self.result).finish()
    }
}

/// `F_q` with element `k` at index `k`.
pub fn prime_field(q: u64) -> Result<SmallField> {
    if !crate::primes::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    SmallField::new(&ExtField::new(q, vec![0, 1])).ok_or_else(|| Error::Unsupported(format!("field of size {q} is too large")))
}

/// Table-driven copy of a residue field with the index map.
pub fn small_field(field: &ResidueField) -> Result<SmallField> {
    SmallField::new(field.field()).ok_or_else(|| Error::Unsupported(format!("field of size {}^{} is too large", field.q(), field.f())))
}

pub fn to_indices(field: &ResidueField, m: &ResidueMatrix) -> Vec<u32> {
    m.entries().iter().map(|a| field.field().index_of(a.coeffs()) as u32).collect()
}

impl Closure {
    pub fn run(field: &ResidueField, gens: &[ResidueMatrix], opts: ClosureOptions) -> Result<Closure> {
        Self::run_until(field, gens, opts, &[])
    }

    /// Closure that stops as soon as every matrix of `targets` has been
    /// reached; with no targets this is [`Closure::run`].
    pub fn run_until(field: &ResidueField, gens: &[ResidueMatrix], opts: ClosureOptions, targets: &[ResidueMatrix]) -> Result<Closure> {
        let n = match gens.first() {
            Some(g) => g.rows(),
            None => 1,
        };
        if gens.iter().chain(targets).any(|g| g.rows() != n || g.cols() != n) {
            return Err(Error::Dimension("matrices must be square of one size".into()));
        }
        let ops = ResidueOps(field);
        if gens.iter().any(|g| ops.det_inverse(g).1.is_none()) {
            return Err(Error::Dimension("closure generators must be invertible".into()));
        }
        let gens: Vec<Vec<u32>> = gens.iter().map(|g| to_indices(field, g)).collect();
        let targets: Vec<Vec<u32>> = targets.iter().map(|t| to_indices(field, t)).collect();
        Self::run_indices(small_field(field)?, n, &gens, opts, &targets)
    }

    /// Closure of `n x n` matrices given as row-major element indices of
    /// `field`.
    pub fn run_indices(field: SmallField, n: usize, gens: &[Vec<u32>], opts: ClosureOptions, targets: &[Vec<u32>]) -> Result<Closure> {
        if opts.cap == 0 {
            return Err(Error::Unsupported("closure cap must be at least 1".into()));
        }
        if gens.iter().chain(targets).any(|g| g.len() != n * n || g.iter().any(|&x| x >= field.size())) {
            return Err(Error::Dimension(format!("expected {n}x{n} matrices of field indices")));
        }
        let bits = 32 - (field.size() - 1).leading_zeros();
        let store: Box<dyn Store> = match n * n * bits as usize {
            k if k <= u64::BITS as usize => Box::new(Visited::<u64>::new(bits)),
            k if k <= <u128 as Key>::BITS => Box::new(Visited::<u128>::new(bits)),
            k => return Err(Error::Unsupported(format!("{n}x{n} matrices over a field of size {} need {k} bits per key", field.size()))),
        };
        let empty = ClosureResult { status: ClosureStatus::CapExceeded { visited: 0 }, elements: 0, histogram: None };
        let mut c = Closure { field, n, projective: opts.projective, store, gens: Vec::new(), result: empty };
        c.gens = gens.iter().map(|g| c.normalize(g.clone())).collect();
        let targets: Vec<Vec<u32>> = targets.iter().map(|t| c.normalize(t.clone())).collect();
        c.explore(opts.cap, targets);
        if opts.histogram {
            if let ClosureStatus::Complete { .. } = c.result.status {
                c.result.histogram = Some(c.histogram());
            }
        }
        Ok(c)
    }

    fn identity(&self) -> Vec<u32> {
        (0..self.n * self.n).map(|k| (k % (self.n + 1) == 0) as u32).collect()
    }

    fn normalize(&self, mut m: Vec<u32>) -> Vec<u32> {
        self.normalize_in_place(&mut m);
        m
    }

    fn normalize_in_place(&self, m: &mut [u32]) {
        if self.projective {
            if let Some(&lead) = m.iter().find(|&&x| x != 0) {
                if lead != 1 {
                    let s = self.field.inv(lead).expect("nonzero");
                    for x in m.iter_mut() {
                        *x = self.field.mul(*x, s);
                    }
                }
            }
        }
    }

    fn mul(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let n = self.n;
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = self.field.add(acc, self.field.mul(a[r * n + k], b[k * n + c]));
                }
                out[r * n + c] = acc;
            }
        }
    }

    fn finish(&mut self, status: ClosureStatus) {
        let elements = self.store.len() as u64;
        self.result = ClosureResult { status, elements, histogram: None };
    }

    /// Stops early once every element of `targets` has been visited, if
    /// `targets` is nonempty.
    fn explore(&mut self, cap: u64, mut targets: Vec<Vec<u32>>) {
        let id = self.identity();
        self.store.insert(&id);
        let early = !targets.is_empty();
        targets.retain(|t| !self.store.contains(t));
        if early && targets.is_empty() {
            return self.finish(ClosureStatus::Stopped { visited: 1 });
        }
        let mut x = vec![0u32; self.n * self.n];
        let mut prod = vec![0u32; self.n * self.n];
        let gens = std::mem::take(&mut self.gens);
        let mut i = 0;
        while i < self.store.len() {
            self.store.get(i, &mut x);
            for g in &gens {
                self.mul(&x, g, &mut prod);
                self.normalize_in_place(&mut prod);
                if self.store.contains(&prod) {
                    continue;
                }
                let visited = self.store.len() as u64;
                if visited >= cap {
                    self.gens = gens;
                    return self.finish(ClosureStatus::CapExceeded { visited });
                }
                self.store.insert(&prod);
                if early {
                    targets.retain(|t| *t != prod);
                    if targets.is_empty() {
                        self.gens = gens;
                        return self.finish(ClosureStatus::Stopped { visited: visited + 1 });
                    }
                }
            }
            i += 1;
        }
        self.gens = gens;
        let order = self.store.len() as u64;
        self.finish(ClosureStatus::Complete { order });
    }

    fn histogram(&self) -> BTreeMap<u64, u64> {
        let id = self.identity();
        let mut hist = BTreeMap::new();
        let mut x = vec![0u32; self.n * self.n];
        let mut prod = vec![0u32; self.n * self.n];
        for i in 0..self.store.len() {
            self.store.get(i, &mut x);
            let mut y = x.clone();
            let mut k = 1u64;
            while y != id {
                self.mul(&y, &x, &mut prod);
                self.normalize_in_place(&mut prod);
                std::mem::swap(&mut y, &mut prod);
                k += 1;
            }
            *hist.entry(k).or_insert(0) += 1;
        }
        hist
    }

    pub fn result(&self) -> &ClosureResult {
        &self.result
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.result.status, ClosureStatus::Complete { .. })
    }

    pub fn contains_indices(&self, m: &[u32]) -> bool {
        m.len() == self.n * self.n && self.store.contains(&self.normalize(m.to_vec()))
    }

    pub fn contains(&self, field: &ResidueField, m: &ResidueMatrix) -> bool {
        m.rows() == self.n && self.contains_indices(&to_indices(field, m))
    }

    /// Visited elements as field indices, in visit order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.store.len()).map(|i| {
            let mut out = vec![0u32; self.n * self.n];
            self.store.get(i, &mut out);
            out
        })
    }

    /// `a b` over the closure's field, normalized like the stored elements.
    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.n * self.n];
        self.mul(a, b, &mut out);
        self.normalize(out)
    }

    /// Inverse of a visited element, by powering.
    pub fn inverse(&self, a: &[u32]) -> Vec<u32> {
        let id = self.identity();
        let mut prev = id.clone();
        let mut y = self.normalize(a.to_vec());
        while y != id {
            prev = y.clone();
            y = self.multiply(&y, a);
        }
        prev
    }
}

pub fn closure(field: &ResidueField, gens: &[ResidueMatrix], opts: ClosureOptions) -> Result<ClosureResult> {
    Ok(Closure::run(field, gens, opts)?.result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    True,
    False,
    Undecided,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::True => "true",
            Decision::False => "false",
            Decision::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub decision: Decision,
    pub a: ClosureResult,
    pub b: Option<ClosureResult>,
}

/// Whether `<A> = <B>`. The closure of `A` is completed and must contain
/// the generators of `B`; the closure of `B` is then explored only until it
/// reaches every generator of `A`.
pub fn same_subgroup(field: &ResidueField, a: &[ResidueMatrix], b: &[ResidueMatrix], opts: ClosureOptions) -> Result<Comparison> {
    let ca = Closure::run(field, a, opts)?;
    let ra = ca.result.clone();
    if !ca.is_complete() {
        return Ok(Comparison { decision: Decision::Undecided, a: ra, b: None });
    }
    if !b.iter().all(|g| ca.contains(field, g)) {
        return Ok(Comparison { decision: Decision::False, a: ra, b: None });
    }
    drop(ca);
    let rb = Closure::run_until(field, b, opts, a)?.result;
    let decision = match rb.status {
        ClosureStatus::Stopped { .. } => Decision::True,
        // complete without reaching all of A: a proper subgroup
        ClosureStatus::Complete { .. } if a.is_empty() => Decision::True,
        ClosureStatus::Complete { .. } => Decision::False,
        ClosureStatus::CapExceeded { .. } => Decision::Undecided,
    };
    Ok(Comparison { decision, a: ra, b: Some(rb) })
}

/// Whether `g N g^-1 = N` for every ambient generator `g`, where `N` is
/// generated by `normal`; checked on the generators of `N`.
pub fn normality_check(
    field: &ResidueField,
    normal: &[ResidueMatrix],
    ambient: &[ResidueMatrix],
    opts: ClosureOptions,
) -> Result<(Decision, ClosureResult)> {
    let cn = Closure::run(field, normal, opts)?;
    if !cn.is_complete() {
        return Ok((Decision::Undecided, cn.result.clone()));
    }
    let ops = ResidueOps(field);
    for g in ambient {
        let g_inv = ops.det_inverse(g).1.ok_or(Error::DivisionByZero)?;
        for x in normal {
            let conj = ops.mul(&ops.mul(g, x), &g_inv);
            if !cn.contains(field, &conj) {
                return Ok((Decision::False, cn.result.clone()));
            }
        }
    }
    Ok((Decision::True, cn.result.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(cap: u64, projective: bool) -> ClosureOptions {
        ClosureOptions { cap, projective, histogram: true }
    }

    fn sl2(q: u64, projective: bool, cap: u64) -> Closure {
        let f = prime_field(q).unwrap();
        Closure::run_indices(f, 2, &[vec![1, 1, 0, 1], vec![1, 0, 1, 1]], opts(cap, projective), &[]).unwrap()
    }

    #[test]
    fn transvections_generate_sl2() {
        let c = sl2(7, false, DEFAULT_CAP);
        assert_eq!(c.result().order(), Some(336));
        let hist = c.result().histogram.as_ref().unwrap();
        assert_eq!(hist.values().sum::<u64>(), 336);
        assert_eq!(hist[&1], 1);
        assert_eq!(hist[&2], 1);
        assert_eq!(sl2(7, true, DEFAULT_CAP).result().order(), Some(168));
        assert_eq!(sl2(5, false, DEFAULT_CAP).result().order(), Some(120));
    }

    #[test]
    fn cap_is_never_an_order() {
        let c = sl2(7, false, 100);
        assert_eq!(c.result().status, ClosureStatus::CapExceeded { visited: 100 });
        assert_eq!(c.result().order(), None);
        assert_eq!(c.result().histogram, None);
        assert_eq!(c.result().status.to_string(), "undecided");
    }

    #[test]
    fn identity_generator() {
        let f = prime_field(11).unwrap();
        let c = Closure::run_indices(f, 2, &[vec![1, 0, 0, 1]], opts(1, false), &[]).unwrap();
        assert_eq!(c.result().order(), Some(1));
        assert!(Closure::run_indices(prime_field(11).unwrap(), 2, &[], opts(0, false), &[]).is_err());
    }

    #[test]
    fn closure_is_closed_and_deterministic() {
        let a = sl2(7, false, DEFAULT_CAP);
        let b = sl2(7, false, DEFAULT_CAP);
        let elems: Vec<Vec<u32>> = a.elements().collect();
        assert_eq!(elems, b.elements().collect::<Vec<_>>());
        for (i, x) in elems.iter().enumerate() {
            assert!(a.contains_indices(&a.inverse(x)));
            let y = &elems[(i * 37 + 11) % elems.len()];
            assert!(a.contains_indices(&a.multiply(x, y)));
        }
        assert_eq!(gl_order(2, 7) % BigUint::from(336u32), BigUint::from(0u32));
    }

    #[test]
    fn stops_at_targets() {
        let f = prime_field(7).unwrap();
        let target = vec![1, 3, 0, 1];
        let c = Closure::run_indices(f, 2, &[vec![1, 1, 0, 1], vec![1, 0, 1, 1]], opts(DEFAULT_CAP, false), &[target.clone()]).unwrap();
        assert!(matches!(c.result().status, ClosureStatus::Stopped { .. }));
        assert!(c.contains_indices(&target));
    }
}
