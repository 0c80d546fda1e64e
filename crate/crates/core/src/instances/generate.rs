use std::collections::BTreeSet;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{EdgeSpec, ElementSpec, Instance, MatroidSpec, Metadata};
use crate::{Block, ElementId, Error, PointId, Result, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Uniform,
    Partition,
    Graphic,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Uniform, Kind::Partition, Kind::Graphic];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Uniform => "uniform",
            Kind::Partition => "partition",
            Kind::Graphic => "graphic",
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown matroid kind {s:?}")))
    }
}

fn random_matroid(kind: Kind, ground: &[ElementId], rng: &mut ChaCha8Rng) -> MatroidSpec {
    match kind {
        Kind::Uniform => MatroidSpec::Uniform {
            ground: ground.to_vec(),
            rank: rng.random_range(1..=ground.len().max(1)),
        },
        Kind::Partition => {
            let parts = rng.random_range(1..=ground.len().clamp(1, 3));
            let mut blocks = vec![Vec::new(); parts];
            for &e in ground {
                blocks[rng.random_range(0..parts)].push(e);
            }
            MatroidSpec::Partition {
                blocks: blocks
                    .into_iter()
                    .filter(|b| !b.is_empty())
                    .map(|elements| {
                        let capacity = rng.random_range(1..=elements.len());
                        Block { elements, capacity }
                    })
                    .collect(),
            }
        }
        Kind::Graphic => {
            let vertices = (ground.len() as u32 / 2 + 2).max(2);
            MatroidSpec::Graphic {
                edges: ground
                    .iter()
                    .map(|&element| {
                        let u = rng.random_range(0..vertices);
                        let v = (u + rng.random_range(1..vertices)) % vertices;
                        EdgeSpec { element, u, v }
                    })
                    .collect(),
            }
        }
    }
}

/// `n` elements with integer weights in `1..=10`, each placed in between
/// one and `ell` of `s` matroids whose kinds are drawn from `kinds`.
pub fn gen_random_matchoid(
    n: usize,
    s: usize,
    ell: usize,
    kinds: &[Kind],
    seed: u64,
) -> Result<Instance> {
    if n == 0 || s == 0 || ell == 0 || ell > s || s > n * ell || kinds.is_empty() {
        return Err(Error::Parameter(format!(
            "need n, s, ell ≥ 1, ell ≤ s ≤ n·ell and some matroid kind (n={n}, s={s}, ell={ell})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grounds: Vec<Vec<ElementId>> = vec![Vec::new(); s];
    // Matroid j first gets element j mod n, so no ground is empty.
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); n];
    for j in 0..s {
        owners[j % n].push(j);
    }
    let mut elements = Vec::with_capacity(n);
    for (i, mine) in owners.iter_mut().enumerate() {
        let id = ElementId(i as u32);
        let count = rng.random_range(mine.len().max(1)..=ell);
        let rest: Vec<usize> = (0..s).filter(|j| !mine.contains(j)).collect();
        mine.extend(rest.choose_multiple(&mut rng, count - mine.len()));
        mine.sort_unstable();
        for &j in mine.iter() {
            grounds[j].push(id);
        }
        elements.push(ElementSpec {
            id,
            weight: Weight::integer(rng.random_range(1..=10)),
            points: None,
        });
    }
    let matroids = grounds
        .iter()
        .map(|g| {
            let kind = *kinds.choose(&mut rng).expect("kinds is nonempty");
            random_matroid(kind, g, &mut rng)
        })
        .collect();
    let mut inst = Instance::new(elements, matroids);
    inst.stream_order.shuffle(&mut rng);
    inst.metadata = Metadata {
        generator: "random-matchoid".into(),
        seed: Some(seed),
        params: [
            ("n".to_string(), json!(n)),
            ("s".to_string(), json!(s)),
            ("ell".to_string(), json!(ell)),
            (
                "kinds".to_string(),
                json!(kinds.iter().map(|k| k.name()).collect::<Vec<_>>()),
            ),
        ]
        .into_iter()
        .collect(),
    };
    Ok(inst)
}

fn attach_points(
    inst: &mut Instance,
    m: usize,
    max_set: usize,
    weighted: bool,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    if m == 0 || max_set == 0 {
        return Err(Error::Parameter("need m ≥ 1 and max_set ≥ 1".into()));
    }
    let universe: Vec<PointId> = (0..m as PointId).collect();
    for e in &mut inst.elements {
        let size = rng.random_range(1..=max_set.min(m));
        let mut points: Vec<PointId> = universe.choose_multiple(rng, size).copied().collect();
        points.sort_unstable();
        e.points = Some(points);
    }
    inst.universe_size = Some(m);
    inst.point_weights = weighted.then(|| {
        universe
            .iter()
            .map(|&p| (p, Weight::integer(rng.random_range(1..=20))))
            .collect()
    });
    let params = &mut inst.metadata.params;
    params.insert("m".into(), json!(m));
    params.insert("max_set".into(), json!(max_set));
    params.insert("weighted".into(), json!(weighted));
    Ok(())
}

/// `n` elements with random point sets of size `1..=max_set` over `m`
/// points, under a single free matroid. Unweighted instances carry no point
/// weights, so every point weighs 1.
pub fn gen_coverage(
    n: usize,
    m: usize,
    max_set: usize,
    weighted: bool,
    seed: u64,
) -> Result<Instance> {
    if n == 0 {
        return Err(Error::Parameter("need n ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<ElementId> = (0..n as u32).map(ElementId).collect();
    let elements = ids
        .iter()
        .map(|&id| ElementSpec {
            id,
            weight: Weight::integer(1),
            points: None,
        })
        .collect();
    let mut inst = Instance::new(
        elements,
        vec![MatroidSpec::Uniform {
            ground: ids,
            rank: n,
        }],
    );
    inst.metadata = Metadata {
        generator: "coverage".into(),
        seed: Some(seed),
        params: [("n".to_string(), json!(n))].into_iter().collect(),
    };
    attach_points(&mut inst, m, max_set, weighted, &mut rng)?;
    Ok(inst)
}

/// [`gen_random_matchoid`] with random point sets attached.
#[allow(clippy::too_many_arguments)]
pub fn gen_coverage_matchoid(
    n: usize,
    s: usize,
    ell: usize,
    kinds: &[Kind],
    m: usize,
    max_set: usize,
    weighted: bool,
    seed: u64,
) -> Result<Instance> {
    let mut inst = gen_random_matchoid(n, s, ell, kinds, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    attach_points(&mut inst, m, max_set, weighted, &mut rng)?;
    inst.metadata.generator = "coverage-matchoid".into();
    Ok(inst)
}

/// A simple undirected graph on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertices: u32,
    pub edges: Vec<(u32, u32)>,
}

/// Independent set as a matchoid: one weight-1 element per vertex covering
/// its own point, and a rank-1 uniform matroid on each edge.
pub fn encode_independent_set(graph: &Graph, k: usize) -> Result<Instance> {
    let mut seen = BTreeSet::new();
    for &(u, v) in &graph.edges {
        if u == v || u >= graph.vertices || v >= graph.vertices {
            return Err(Error::Parameter(format!(
                "edge ({u}, {v}) is not a simple edge of the graph"
            )));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parameter(format!("edge ({u}, {v}) appears twice")));
        }
    }
    let elements = (0..graph.vertices)
        .map(|v| ElementSpec {
            id: ElementId(v),
            weight: Weight::integer(1),
            points: Some(vec![v]),
        })
        .collect();
    let matroids = graph
        .edges
        .iter()
        .map(|&(u, v)| MatroidSpec::Uniform {
            ground: vec![ElementId(u), ElementId(v)],
            rank: 1,
        })
        .collect();
    let mut inst = Instance::new(elements, matroids);
    inst.universe_size = Some(graph.vertices as usize);
    inst.metadata = Metadata {
        generator: "independent-set".into(),
        seed: None,
        params: [
            ("k".to_string(), json!(k)),
            ("edges".to_string(), json!(graph.edges)),
        ]
        .into_iter()
        .collect(),
    };
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruteforce::brute_max_weight_feasible;
    use crate::set;
    use proptest::prelude::*;

    #[test]
    fn deterministic() {
        let a = gen_random_matchoid(6, 3, 2, &Kind::ALL, 1).unwrap();
        let b = gen_random_matchoid(6, 3, 2, &Kind::ALL, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            gen_coverage(5, 6, 3, true, 2).unwrap(),
            gen_coverage(5, 6, 3, true, 2).unwrap()
        );
    }

    #[test]
    fn single_matroid() {
        let inst = gen_random_matchoid(5, 1, 1, &Kind::ALL, 3).unwrap();
        assert_eq!(inst.matroids.len(), 1);
        assert_eq!(inst.to_matchoid().unwrap().ell(), 1);
    }

    #[test]
    fn bad_parameters() {
        assert!(gen_random_matchoid(5, 1, 2, &Kind::ALL, 0).is_err());
        assert!(gen_random_matchoid(2, 5, 2, &Kind::ALL, 0).is_err());
        assert!(gen_random_matchoid(0, 1, 1, &Kind::ALL, 0).is_err());
        assert!(gen_random_matchoid(3, 2, 1, &[], 0).is_err());
        assert!("hypergraph".parse::<Kind>().is_err());
        assert_eq!("graphic".parse::<Kind>().unwrap(), Kind::Graphic);
    }

    #[test]
    fn coverage_shapes() {
        let inst = gen_coverage(8, 5, 3, false, 4).unwrap();
        assert!(inst.point_weights.is_none());
        assert!(inst
            .elements
            .iter()
            .all(|e| (1..=3).contains(&e.points.as_ref().unwrap().len())));
        let cov = inst.coverage().unwrap();
        assert!((0..5).all(|p| cov.point_weight(p) == Weight::integer(1)));
    }

    #[test]
    fn path_encoding() {
        let g = Graph {
            vertices: 3,
            edges: vec![(0, 1), (1, 2)],
        };
        let inst = encode_independent_set(&g, 2).unwrap();
        assert_eq!(inst.matroids.len(), 2);
        let mc = inst.to_matchoid().unwrap();
        let best = brute_max_weight_feasible(&mc, &inst.weights(), 2).unwrap();
        assert_eq!(best.witness, set([0, 2]));
    }

    #[test]
    fn triangle_and_edgeless() {
        let tri = Graph {
            vertices: 3,
            edges: vec![(0, 1), (1, 2), (0, 2)],
        };
        let inst = encode_independent_set(&tri, 2).unwrap();
        let mc = inst.to_matchoid().unwrap();
        assert_eq!(
            brute_max_weight_feasible(&mc, &inst.weights(), 2)
                .unwrap()
                .value,
            Weight::integer(1)
        );
        let empty = Graph {
            vertices: 4,
            edges: vec![],
        };
        let inst = encode_independent_set(&empty, 4).unwrap();
        let mc = inst.to_matchoid().unwrap();
        assert!(mc.is_feasible(&set(0..4)).unwrap());
        assert!(encode_independent_set(
            &Graph {
                vertices: 2,
                edges: vec![(0, 0)]
            },
            1
        )
        .is_err());
        assert!(encode_independent_set(
            &Graph {
                vertices: 2,
                edges: vec![(0, 1), (1, 0)]
            },
            1
        )
        .is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn generated_instances_round_trip(n in 1usize..12, s in 1usize..5, ell in 1usize..3, seed: u64) {
            prop_assume!(ell <= s && s <= n * ell);
            let inst = gen_coverage_matchoid(n, s, ell, &Kind::ALL, 6, 3, true, seed).unwrap();
            let back = Instance::from_json(&inst.to_json()).unwrap();
            prop_assert_eq!(&back, &inst);
            let mc = inst.to_matchoid().unwrap();
            prop_assert!(mc.max_incidence() <= ell);
        }
    }
}
