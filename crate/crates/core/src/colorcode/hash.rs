use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Gf2Field;
use super::{zbar, MAX_ZBAR};
use crate::{Error, PointId, Result};

/// A random polynomial of degree `z − 1` over GF(2^b), reduced to a color
/// in `[z̄]` by keeping the top `log₂ z̄` bits of its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HashFunction {
    seed: u64,
    z: usize,
    universe_size: usize,
    field: Gf2Field,
    color_bits: u32,
    coeffs: Vec<u64>,
}

fn log2_ceil(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

impl HashFunction {
    /// A member of the `z`-wise independent family for points `0..m`,
    /// determined by `seed`.
    pub fn draw(seed: u64, z: usize, m: usize) -> Result<Self> {
        if z == 0 {
            return Err(Error::Parameter("z must be at least 1".into()));
        }
        let zb = zbar(z);
        if zb > MAX_ZBAR {
            return Err(Error::Parameter(format!(
                "z = {z} needs {zb} colors; at most {MAX_ZBAR} supported"
            )));
        }
        if m as u64 > 1 << 32 {
            return Err(Error::Parameter(format!(
                "universe of size {m} is too large"
            )));
        }
        let color_bits = log2_ceil(zb as u64);
        let bits = log2_ceil(m as u64).max(color_bits).max(1);
        let field = Gf2Field::new(bits);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = (0..z).map(|_| rng.random_range(0..field.size())).collect();
        Ok(HashFunction {
            seed,
            z,
            universe_size: m,
            field,
            color_bits,
            coeffs,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn zbar(&self) -> usize {
        1 << self.color_bits
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn field(&self) -> Gf2Field {
        self.field
    }

    /// Size of the description: `z` field elements.
    pub fn seed_bits(&self) -> u64 {
        self.z as u64 * self.field.bits() as u64
    }

    pub fn color(&self, p: PointId) -> u32 {
        let v = self.field.eval(&self.coeffs, p as u64);
        (v >> (self.field.bits() - self.color_bits)) as u32
    }

    pub fn is_injective_on(&self, points: &[PointId]) -> bool {
        let mut seen = 0u64;
        points.iter().all(|&p| {
            let bit = 1u64 << self.color(p);
            let fresh = seen & bit == 0;
            seen |= bit;
            fresh
        })
    }
}

fn for_each_subset(items: &[PointId], t: usize, visit: &mut dyn FnMut(&[PointId])) {
    fn go(
        items: &[PointId],
        start: usize,
        t: usize,
        cur: &mut Vec<PointId>,
        visit: &mut dyn FnMut(&[PointId]),
    ) {
        if cur.len() == t {
            visit(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < t - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, i + 1, t, cur, visit);
            cur.pop();
        }
    }
    go(items, 0, t, &mut Vec::with_capacity(t), visit);
}

pub const PERFECT_FAMILY_POINT_LIMIT: usize = 30;

/// Seeds tried before [`perfect_family`] gives up.
pub fn perfect_family_cap(z: usize, universe: usize) -> u64 {
    let u = universe.max(2) as f64;
    let cap = (10.0 * (z as f64).exp() * z as f64 * u.ln()).ceil();
    (cap as u64).max(1)
}

/// Hash functions such that every `min(z, |U|)`-subset of `universe` is
/// injectively colored by at least one of them. Seeds `0, 1, 2, …` are
/// tried in order and kept when they separate a subset not yet covered.
pub fn perfect_family(z: usize, universe: &[PointId], m: usize) -> Result<Vec<HashFunction>> {
    let mut points = universe.to_vec();
    points.sort_unstable();
    points.dedup();
    if points.len() > PERFECT_FAMILY_POINT_LIMIT {
        return Err(Error::SizeGuard {
            size: points.len(),
            limit: PERFECT_FAMILY_POINT_LIMIT,
        });
    }
    let t = z.min(points.len());
    let mut uncovered = Vec::new();
    for_each_subset(&points, t, &mut |s| uncovered.push(s.to_vec()));
    let mut family = Vec::new();
    if t <= 1 {
        family.push(HashFunction::draw(0, z, m)?);
        return Ok(family);
    }
    let cap = perfect_family_cap(z, points.len());
    for seed in 0..cap {
        if uncovered.is_empty() {
            break;
        }
        let h = HashFunction::draw(seed, z, m)?;
        let before = uncovered.len();
        uncovered.retain(|s| !h.is_injective_on(s));
        if uncovered.len() < before {
            family.push(h);
        }
    }
    match uncovered.first() {
        None => Ok(family),
        Some(s) => Err(Error::Family(format!(
            "points {s:?} not separated by any of the first {cap} seeds"
        ))),
    }
}

/// Every `t`-subset of `universe` is injectively colored by some member.
pub fn is_perfect(family: &[HashFunction], universe: &[PointId], t: usize) -> bool {
    let mut ok = true;
    for_each_subset(universe, t, &mut |s| {
        ok &= family.iter().any(|h| h.is_injective_on(s));
    });
    ok
}

/// `⌈e^z · ln(1/ε)⌉`, at least 1.
pub fn repetitions(z: usize, eps: f64) -> Result<u64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    let u = ((z as f64).exp() * (1.0 / eps).ln()).ceil();
    Ok((u as u64).max(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = HashFunction::draw(7, 3, 20).unwrap();
        let b = HashFunction::draw(7, 3, 20).unwrap();
        assert_eq!(a, b);
        for p in 0..20 {
            assert_eq!(a.color(p), b.color(p));
            assert!(a.color(p) < 4);
        }
    }

    #[test]
    fn degree_zero_is_constant() {
        for seed in 0..20 {
            let h = HashFunction::draw(seed, 1, 50).unwrap();
            assert_eq!(h.zbar(), 1);
            assert!((0..50).all(|p| h.color(p) == 0));
        }
    }

    #[test]
    fn field_size_covers_points_and_colors() {
        let h = HashFunction::draw(0, 5, 3).unwrap();
        assert_eq!(h.zbar(), 8);
        assert_eq!(h.field().bits(), 3);
        let h = HashFunction::draw(0, 2, 100).unwrap();
        assert_eq!(h.field().bits(), 7);
        assert_eq!(h.seed_bits(), 14);
        let h = HashFunction::draw(0, 1, 1).unwrap();
        assert_eq!(h.field().bits(), 1);
    }

    #[test]
    fn bad_parameters() {
        assert!(HashFunction::draw(0, 0, 4).is_err());
        assert!(HashFunction::draw(0, 9, 4).is_err());
    }

    #[test]
    fn pairwise_uniformity() {
        // z = 2, z̄ = 2: the pair (h(1), h(2)) is uniform on four cells.
        let trials = 100_000u64;
        let mut cells = [0u64; 4];
        for seed in 0..trials {
            let h = HashFunction::draw(seed, 2, 8).unwrap();
            cells[(h.color(1) * 2 + h.color(2)) as usize] += 1;
        }
        let p = 0.25;
        let sd = (trials as f64 * p * (1.0 - p)).sqrt();
        for c in cells {
            assert!(
                (c as f64 - trials as f64 * p).abs() <= 4.0 * sd,
                "{cells:?}"
            );
        }
    }

    #[test]
    fn repetition_counts() {
        assert_eq!(repetitions(2, 0.1).unwrap(), 18);
        assert_eq!(repetitions(3, 0.1).unwrap(), 47);
        assert_eq!(repetitions(2, 0.999_999).unwrap(), 1);
        assert!(repetitions(2, 0.0).is_err());
        assert!(repetitions(2, 1.0).is_err());
    }

    #[test]
    fn family_for_three_points() {
        let u = [0, 1, 2];
        let family = perfect_family(2, &u, 3).unwrap();
        for pair in [[0, 1], [0, 2], [1, 2]] {
            assert!(family.iter().any(|h| h.color(pair[0]) != h.color(pair[1])));
        }
        assert!(is_perfect(&family, &u, 2));
    }

    #[test]
    fn family_trivial_cases() {
        assert_eq!(perfect_family(1, &[0, 1, 2, 3], 4).unwrap().len(), 1);
        assert_eq!(perfect_family(3, &[5], 6).unwrap().len(), 1);
        let u: Vec<PointId> = (0..10).collect();
        let family = perfect_family(3, &u, 10).unwrap();
        assert!(is_perfect(&family, &u, 3));
        let big: Vec<PointId> = (0..31).collect();
        assert!(perfect_family(2, &big, 31).is_err());
    }
}
