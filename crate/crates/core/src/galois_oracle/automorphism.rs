use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::modular::small_primes_from;
use crate::numfield::{rank, NFElt, NFPoly};
use crate::permgroup::{Perm, PermGroup};

use super::splitting::{PrimitiveForm, Reduced, SplittingFieldData, FIRST_PRIME};

/// Gal(L/K) as a permutation group on `s.roots`.
///
/// Work modulo a prime p with a degree-one prime 𝔭 = (p, η − t) of K at
/// which f splits into distinct linear factors. Then 𝔭 splits completely in
/// L, so there are exactly [L:K] homomorphisms L → F_p over 𝔭, and they are
/// the points of the tower. Composing the first point e with σ gives
/// another point P, and σ(r_i) = r_j exactly when r_i(P) = r_j(e).
pub fn galois_group(s: &SplittingFieldData, f: &NFPoly) -> Result<PermGroup> {
    if f.squarefree_part()?.monic()? != s.poly {
        return Err(Error::InvalidArgument(
            "polynomial does not match the splitting field data".into(),
        ));
    }
    let n = s.roots.len();
    let degree = s.degree_over_base() as usize;
    let trivial = PermGroup::trivial(n);
    if degree == 1 {
        return Ok(trivial);
    }
    let depth = s.relations().len();
    for p in small_primes_from(FIRST_PRIME) {
        let Some(red) = Reduced::new(s, p) else {
            continue;
        };
        let Some(eta) = red.eta_values(n).into_iter().next() else {
            continue;
        };
        let Some(points) = red.points(depth, degree + 1, &[eta]) else {
            continue;
        };
        if points.len() != degree {
            continue;
        }
        let Some(values) = points
            .iter()
            .map(|pt| red.all_roots_at(pt))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let base = &values[0];
        let distinct: BTreeSet<u64> = base.iter().copied().collect();
        if distinct.len() != n {
            continue;
        }
        let mut group = trivial.clone();
        for v in &values {
            let images: Vec<usize> = v
                .iter()
                .map(|x| base.iter().position(|y| y == x).expect("root image"))
                .collect();
            let pi = Perm::from_images(images)?;
            if !group.contains(&pi) {
                let mut gens = group.gens().to_vec();
                gens.push(pi);
                group = trivial.subgroup(gens);
            }
        }
        assert_eq!(
            group.order_u64(),
            Some(degree as u64),
            "automorphism count equals [L:K]"
        );
        return Ok(group);
    }
    unreachable!("prime supply exhausted")
}

/// σ(θ) for the automorphism with root permutation `pi`.
pub fn automorphism_image(s: &PrimitiveForm, pi: &Perm) -> NFElt {
    let mut acc = s.base_gen.scale(&s.theta_base_coeff.clone().into());
    for (j, c) in s.theta_root_coeffs.iter().enumerate() {
        acc = acc.add(&s.roots[pi.apply(j)].scale(&c.clone().into()));
    }
    acc
}

/// σ(a) for a ∈ L.
pub fn apply_automorphism(s: &PrimitiveForm, pi: &Perm, a: &NFElt) -> NFElt {
    a.embed(&automorphism_image(s, pi))
}

/// [L^H : K] for a subgroup H given by its elements, from the rank of the
/// H-averages of the power basis of L.
pub fn fixed_field_degree(s: &PrimitiveForm, h: &[Perm]) -> usize {
    let l = &s.field;
    let images: Vec<NFElt> = h.iter().map(|pi| automorphism_image(s, pi)).collect();
    let sums: Vec<Vec<_>> = (0..l.degree())
        .map(|i| {
            images
                .iter()
                .fold(NFElt::zero(l), |acc, x| acc.add(&x.pow(i as u64)))
                .coords()
        })
        .collect();
    rank(&sums) / s.base.degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QPoly;
    use crate::galois_oracle::galois_group_of;

    fn validate(s: &SplittingFieldData, g: &PermGroup) -> PrimitiveForm {
        let s = s.primitive_form().unwrap();
        for pi in g.elements().unwrap() {
            let img = automorphism_image(&s, &pi);
            assert!(img.eval_qpoly(s.field.mu()).is_zero());
            assert_eq!(apply_automorphism(&s, &pi, &s.base_gen), s.base_gen);
            for (i, r) in s.roots.iter().enumerate() {
                assert_eq!(apply_automorphism(&s, &pi, r), s.roots[pi.apply(i)]);
            }
        }
        s
    }

    #[test]
    fn conjugation() {
        let (s, g) = galois_group_of(&QPoly::from_ints(&[1, 0, 1]), 2).unwrap();
        assert_eq!(g.order_u64(), Some(2));
        assert_eq!(g.gens()[0].to_cycle_string(), "(0 1)");
        validate(&s, &g);
    }

    #[test]
    fn klein_four() {
        let (s, g) = galois_group_of(&QPoly::from_ints(&[1, 0, 0, 0, 1]), 4).unwrap();
        assert_eq!(g.order_u64(), Some(4));
        assert!(g.elements().unwrap().iter().all(|x| x.order() <= 2));
        validate(&s, &g);
    }

    #[test]
    fn s3_and_fixed_fields() {
        let (s, g) = galois_group_of(&QPoly::from_ints(&[-2, 0, 0, 1]), 6).unwrap();
        assert_eq!(g.order_u64(), Some(6));
        assert!(g.is_transitive());
        let s = validate(&s, &g);
        // subgroups of S3: the fixed field of H has degree [G:H]
        let elems = g.elements().unwrap();
        for x in &elems {
            let h = g.subgroup(vec![x.clone()]).elements().unwrap();
            assert_eq!(fixed_field_degree(&s, &h) * h.len(), 6);
        }
        assert_eq!(fixed_field_degree(&s, &elems), 1);
    }

    #[test]
    fn cyclic_cubic_and_alternating_quintic() {
        let (s, g) = galois_group_of(&QPoly::from_ints(&[-1, -3, 0, 1]), 6).unwrap();
        assert_eq!(g.order_u64(), Some(3));
        validate(&s, &g);
        let (_, g) = galois_group_of(&QPoly::from_ints(&[16, 20, 0, 0, 0, 1]), 120).unwrap();
        assert_eq!(g.order_u64(), Some(60));
        assert!(g.same_group(&PermGroup::alternating(5)));
    }

    #[test]
    fn reducible_is_intransitive() {
        let f = &QPoly::from_ints(&[-2, 0, 1]) * &QPoly::from_ints(&[-3, 0, 1]);
        let (s, g) = galois_group_of(&f, 4).unwrap();
        assert_eq!(g.order_u64(), Some(4));
        assert!(!g.is_transitive());
        validate(&s, &g);
    }

    #[test]
    fn mismatched_polynomial() {
        let (s, _) = galois_group_of(&QPoly::from_ints(&[1, 0, 1]), 2).unwrap();
        let other = NFPoly::from_qpoly(&s.base, &QPoly::from_ints(&[2, 0, 1]));
        assert!(galois_group(&s, &other).is_err());
    }
}
