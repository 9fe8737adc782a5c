//! Fixed inputs for the kernel benchmarks, drawn once from a seeded
//! generator so every run measures the same work.

use h2c_core::sampling::{random_negative_point, random_scene, random_unit_tangent};
use h2c_core::{
    bisector_from_spine, geodesic_through, Bisector, Geodesic, HullClass, HullTag, ProjPoint,
    TangentVector, Tolerance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Fixtures {
    pub tol: Tolerance,
    /// Pairs of points at distance up to 3 from the origin.
    pub pairs: Vec<(ProjPoint, ProjPoint)>,
    pub geodesics: Vec<Geodesic>,
    /// Three unit tangents at a common point.
    pub tangents: Vec<[TangentVector; 3]>,
    /// Point sets on a random flat, one list per hull kind.
    pub scenes: Vec<(HullTag, Vec<ProjPoint>)>,
    /// Claimed flats for the closure oracle, with their points.
    pub claimed: Vec<(HullClass, Vec<ProjPoint>)>,
    /// Bisectors with a pair of points on opposite sides.
    pub crossings: Vec<(Bisector, ProjPoint, ProjPoint)>,
}

impl Fixtures {
    pub fn new(n: usize, seed: u64) -> Self {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<_> = (0..n)
            .map(|_| (random_negative_point(&mut rng, 3.0), random_negative_point(&mut rng, 3.0)))
            .collect();
        let geodesics = pairs
            .iter()
            .map(|(p, q)| geodesic_through(p, q, &tol).expect("distinct points"))
            .collect();
        let tangents = (0..n)
            .map(|_| {
                let p = random_negative_point(&mut rng, 2.0);
                [0, 1, 2].map(|_| random_unit_tangent(&mut rng, &p))
            })
            .collect();
        let tags = [HullTag::Geodesic, HullTag::ComplexGeodesic, HullTag::RealPlane, HullTag::Whole];
        let scenes = (0..n)
            .map(|k| {
                let tag = tags[k % tags.len()];
                (tag, random_scene(&mut rng, tag, 6, 1.5).1)
            })
            .collect();
        let claimed = (0..3)
            .map(|k| random_scene(&mut rng, tags[k], 4, 1.5))
            .collect();
        let mut crossings = Vec::new();
        while crossings.len() < n {
            let (p, q) = (random_negative_point(&mut rng, 1.5), random_negative_point(&mut rng, 1.5));
            let (a, b) = (random_negative_point(&mut rng, 1.5), random_negative_point(&mut rng, 1.5));
            let Ok(g) = geodesic_through(&a, &b, &tol) else { continue };
            let bis = bisector_from_spine(&g);
            if h2c_core::bisector_residual(&bis, &p) * h2c_core::bisector_residual(&bis, &q) < 0.0 {
                crossings.push((bis, p, q));
            }
        }
        Fixtures {
            tol,
            pairs,
            geodesics,
            tangents,
            scenes,
            claimed,
            crossings,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_usable() {
        let f = Fixtures::new(8, 1);
        assert_eq!(f.pairs.len(), 8);
        for (tag, pts) in &f.scenes {
            assert_eq!(h2c_core::hull_classify(pts, &f.tol).unwrap().tag(), *tag);
        }
        for (b, p, q) in &f.crossings {
            h2c_core::bisector_crossing(b, p, &h2c_core::Endpoint::Point(*q), &f.tol).unwrap();
        }
    }
}
