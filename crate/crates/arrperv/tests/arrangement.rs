use arrperv::arrangement::{
    brute_force_faces, chamber_distance, collinear, collinear_oracle, compose, compose_oracle, enumerate_faces, flats,
    quotient, restrict, s1_leq, s1_leq_oracle, samples, Arrangement, FacePoset, S1Cell,
};
use arrperv::exactla::Matrix;
use proptest::prelude::*;

fn linear_samples() -> Vec<Arrangement> {
    vec![samples::line_point(), samples::cross(), samples::three_lines(), samples::boolean3(), samples::braid3()]
}

fn affine_samples() -> Vec<Arrangement> {
    vec![samples::two_points(), samples::triangle()]
}

#[test]
fn enumeration_agrees_with_brute_force() {
    for a in linear_samples().into_iter().chain(affine_samples()) {
        let p = enumerate_faces(&a);
        let got: Vec<_> = p.faces().iter().map(|f| f.signs.clone()).collect();
        assert_eq!(got, brute_force_faces(&a), "{a}");
    }
}

#[test]
fn compose_matches_oracle_everywhere() {
    for a in linear_samples().into_iter().chain(affine_samples()) {
        let p = enumerate_faces(&a);
        for i in 0..p.len() {
            for j in 0..p.len() {
                let s = compose(p.signs(i), p.signs(j)).unwrap();
                assert_eq!(compose_oracle(&a, p.face(i), p.face(j)), s);
                assert!(p.leq(i, p.compose(i, j)));
            }
        }
    }
}

#[test]
fn compose_is_associative_and_monotone() {
    for a in linear_samples() {
        let p = enumerate_faces(&a);
        let n = p.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    assert_eq!(p.compose(p.compose(x, y), z), p.compose(x, p.compose(y, z)));
                    if p.leq(y, z) {
                        assert!(p.leq(p.compose(x, y), p.compose(x, z)));
                    }
                }
            }
        }
    }
}

#[test]
fn span_of_composite_is_the_join() {
    for a in linear_samples() {
        let p = enumerate_faces(&a);
        let lat = flats(&a);
        for c in 0..p.len() {
            for d in 0..p.len() {
                let lc = lat.flat_of_face(&p, c);
                let ld = lat.flat_of_face(&p, d);
                assert_eq!(lat.flat_of_face(&p, p.compose(c, d)), lat.join(lc, ld));
            }
        }
    }
}

fn check_collinear(p: &FacePoset) -> usize {
    let mut count = 0;
    for a in 0..p.len() {
        for b in 0..p.len() {
            for c in 0..p.len() {
                let sign = collinear(p, a, b, c);
                let geo = collinear_oracle(p.arrangement(), p.signs(a), p.signs(b), p.signs(c));
                assert_eq!(sign, geo, "{} {} {}", p.signs(a), p.signs(b), p.signs(c));
                count += sign as usize;
            }
        }
    }
    count
}

#[test]
fn collinearity_matches_oracle_linear() {
    for a in [samples::line_point(), samples::cross(), samples::three_lines()] {
        check_collinear(&enumerate_faces(&a));
    }
}

#[test]
fn collinearity_matches_oracle_affine() {
    for a in affine_samples() {
        check_collinear(&enumerate_faces(&a));
    }
}

#[test]
fn chamber_distance_counts_separating_hyperplanes() {
    for a in linear_samples().into_iter().chain(affine_samples()) {
        let p = enumerate_faces(&a);
        for &x in &p.chambers() {
            for &y in &p.chambers() {
                let sep = (0..a.len()).filter(|&h| p.signs(x).0[h] != p.signs(y).0[h]).count();
                assert_eq!(chamber_distance(&p, x, y).unwrap(), sep);
            }
        }
    }
}

#[test]
fn s1_order_matches_closure_oracle() {
    for a in [samples::line_point(), samples::cross(), samples::three_lines()] {
        let p = enumerate_faces(&a);
        let cells = S1Cell::all(&p);
        for &lo in &cells {
            for &hi in &cells {
                assert_eq!(s1_leq(&p, lo, hi), s1_leq_oracle(&p, lo, hi), "{} {}", lo.label(&p), hi.label(&p));
            }
        }
    }
}

#[test]
fn quotient_map_is_an_isomorphism_on_stars() {
    for a in [samples::cross(), samples::three_lines(), samples::boolean3(), samples::braid3()] {
        let p = enumerate_faces(&a);
        let lat = flats(&a);
        for c in 0..p.len() {
            let q = quotient(&a, lat.flat(lat.flat_of_face(&p, c))).unwrap();
            let qp = enumerate_faces(&q.arrangement);
            let star = p.star(c);
            assert_eq!(star.len(), qp.len());
            let image: Vec<usize> = star.iter().map(|&k| qp.find(&q.project_signs(p.signs(k))).unwrap()).collect();
            for (i, &x) in star.iter().enumerate() {
                assert_eq!(qp.signs(image[i]), &q.arrangement.signs_at(&q.project_point(&p.face(x).interior_point)));
                for (j, &y) in star.iter().enumerate() {
                    assert_eq!(p.leq(x, y), qp.leq(image[i], image[j]));
                    let k = star.iter().position(|&z| z == p.compose(x, y)).unwrap();
                    assert_eq!(image[k], qp.compose(image[i], image[j]));
                }
            }
        }
    }
}

#[test]
fn restriction_faces_are_faces_inside_the_flat() {
    for a in linear_samples().into_iter().chain(affine_samples()) {
        let p = enumerate_faces(&a);
        let lat = flats(&a);
        for l in lat.flats() {
            let r = restrict(&a, l).unwrap();
            let rp = enumerate_faces(&r.arrangement);
            let mut lifted: Vec<_> = rp.faces().iter().map(|f| a.signs_at(&r.lift_point(&f.interior_point))).collect();
            lifted.sort();
            let mut inside: Vec<_> = p
                .faces()
                .iter()
                .filter(|f| l.hyperplanes.iter().all(|&h| f.signs.0[h] == arrperv::arrangement::Sign::Zero))
                .map(|f| f.signs.clone())
                .collect();
            inside.sort();
            assert_eq!(lifted, inside);
        }
    }
}

fn small_arrangement() -> impl Strategy<Value = Arrangement> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, 2), 1..=4).prop_filter_map(
        "valid arrangement",
        |rows| {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            Arrangement::linear_from_i64(2, &refs).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_plane_arrangements(a in small_arrangement()) {
        let p = enumerate_faces(&a);
        let got: Vec<_> = p.faces().iter().map(|f| f.signs.clone()).collect();
        prop_assert_eq!(got, brute_force_faces(&a));
        for &(lo, up) in p.covering_pairs() {
            prop_assert_eq!(p.dim(lo) + 1, p.dim(up));
        }
        for i in 0..p.len() {
            for j in 0..p.len() {
                prop_assert_eq!(compose_oracle(&a, p.face(i), p.face(j)), compose(p.signs(i), p.signs(j)).unwrap());
            }
        }
    }

    #[test]
    fn rank_of_transpose(v in proptest::collection::vec(-3i64..=3, 12)) {
        let m = Matrix::from_i64(3, 4, &v);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }
}

#[test]
fn monotone_criterion_is_strictly_weaker() {
    use arrperv::arrangement::monotone_signs;
    let cross = enumerate_faces(&samples::cross());
    let f = |s: &str| cross.find(&s.parse().unwrap()).unwrap();
    assert!(monotone_signs(&cross, f("00"), f("0+"), f("++")));
    assert!(!collinear(&cross, f("00"), f("0+"), f("++")));
    assert!(!collinear_oracle(
        cross.arrangement(),
        &"00".parse().unwrap(),
        &"0+".parse().unwrap(),
        &"++".parse().unwrap()
    ));
    for a in [samples::line_point(), samples::cross(), samples::three_lines()] {
        let p = enumerate_faces(&a);
        let mut extra = 0;
        for x in 0..p.len() {
            for y in 0..p.len() {
                for z in 0..p.len() {
                    let c = collinear(&p, x, y, z);
                    let m = monotone_signs(&p, x, y, z);
                    assert!(!c || m);
                    extra += (m && !c) as usize;
                }
            }
        }
        println!("{a}: {extra} monotone triples are not collinear");
    }
}
