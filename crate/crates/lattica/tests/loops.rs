use std::collections::{HashMap, HashSet};

use lattica::kernel::*;
use lattica::loops::*;
use lattica::schur::Partition;
use lattica::sixvertex::{asm_count, enumerate_dwbc};
use lattica::Error;
use proptest::prelude::*;

fn lp(s: &str) -> LinkPattern {
    LinkPattern::parse(s).unwrap()
}

/// Applies a word of generators right to left, accumulating closed loops.
fn act(word: &[usize], pi: &LinkPattern) -> (LinkPattern, u32) {
    let mut cur = pi.clone();
    let mut loops = 0;
    for &i in word.iter().rev() {
        let (next, k) = tl_e(i, &cur);
        cur = next;
        loops += k;
    }
    (cur, loops)
}

fn value_of(v: &LoopStateVector, p: &LinkPattern) -> BigRational {
    v.iter().find(|(q, _)| q == p).unwrap().1.clone()
}

#[test]
fn pattern_counts() {
    assert_eq!(link_patterns(1).unwrap().len(), 1);
    assert_eq!(link_patterns(3).unwrap().len(), 5);
    assert_eq!(link_patterns(4).unwrap().len(), 14);
    for n in 0..=8 {
        let pats = link_patterns(n).unwrap();
        assert_eq!(int(pats.len() as i64), catalan(n));
        assert!(pats.iter().all(|p| p.is_noncrossing()));
        assert_eq!(pats.iter().collect::<HashSet<_>>().len(), pats.len());
    }
    assert!(matches!(link_patterns(9), Err(Error::SizeGuard { .. })));
}

#[test]
fn brute_force_pattern_count() {
    // every fixed-point-free involution, keep the noncrossing ones
    fn all(points: Vec<usize>, partner: &mut Vec<usize>, out: &mut Vec<LinkPattern>) {
        if points.is_empty() {
            out.push(LinkPattern::new(partner.clone()).unwrap());
            return;
        }
        let a = points[0];
        for k in 1..points.len() {
            let b = points[k];
            partner[a] = b;
            partner[b] = a;
            let rest: Vec<usize> = points.iter().copied().filter(|&x| x != a && x != b).collect();
            all(rest, partner, out);
        }
    }
    for n in 1..=5 {
        let mut out = Vec::new();
        all((0..2 * n).collect(), &mut vec![0; 2 * n], &mut out);
        let planar: HashSet<LinkPattern> = out.into_iter().filter(|p| p.is_noncrossing()).collect();
        let listed: HashSet<LinkPattern> = link_patterns(n).unwrap().into_iter().collect();
        assert_eq!(planar, listed);
    }
}

#[test]
fn canonical_order_starts_at_the_smallest_pattern() {
    for n in 1..=6 {
        let pats = link_patterns(n).unwrap();
        assert_eq!(pats[0], LinkPattern::smallest(n));
        assert_eq!(*pats.last().unwrap(), LinkPattern::nearest(n));
        let sizes: Vec<usize> = pats.iter().map(|p| p.to_young().unwrap().size()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }
    assert_eq!(LinkPattern::smallest(2).to_string(), "(1 4)(2 3)");
}

#[test]
fn parse_and_render() {
    let p = lp("(1 4)(2 3)");
    assert_eq!(p.partner(1), 4);
    assert_eq!(p.to_string(), "(1 4)(2 3)");
    assert_eq!(lp("(2 3) (4 1)"), p);
    assert!(LinkPattern::parse("(1 2)(2 3)").is_err());
    assert!(LinkPattern::parse("(1 1)").is_err());
    assert!(LinkPattern::new(vec![1, 0, 2]).is_err());
}

#[test]
fn young_bijection() {
    for n in 1..=6 {
        assert_eq!(LinkPattern::smallest(n).to_young().unwrap(), Partition::empty());
        let stair = Partition::new((1..n).rev().collect()).unwrap();
        assert_eq!(LinkPattern::nearest(n).to_young().unwrap(), stair);
        for p in link_patterns(n).unwrap() {
            let y = p.to_young().unwrap();
            assert_eq!(LinkPattern::from_young(n, &y).unwrap(), p);
        }
    }
    let fig = LinkPattern::from_pairs(&[(1, 2), (3, 8), (4, 5), (6, 7)]).unwrap();
    assert_eq!(fig.to_young().unwrap(), Partition::parse("2,1,1").unwrap());
    assert_eq!(LinkPattern::from_young(4, &Partition::parse("2,1,1").unwrap()).unwrap(), fig);
}

#[test]
fn young_bijection_rejects_bad_input() {
    assert!(matches!(lp("(1 3)(2 4)").to_young(), Err(Error::Domain(_))));
    assert!(LinkPattern::from_young(3, &Partition::parse("3").unwrap()).is_err());
    assert!(LinkPattern::from_young(3, &Partition::parse("2,2").unwrap()).is_err());
}

#[test]
fn generator_examples() {
    // (2,3) paired: e_2 closes a loop and fixes the pattern
    let p = lp("(1 4)(2 3)(5 6)");
    assert_eq!(tl_e(2, &p), (p.clone(), 1));
    // e_1 on 0^3 joins 1-2 and 6-5, 3-4 untouched
    assert_eq!(tl_e(1, &LinkPattern::smallest(3)), (lp("(1 2)(3 4)(5 6)"), 0));
    // wrapping generator joins L and 1
    assert_eq!(tl_e(6, &LinkPattern::nearest(3)), (LinkPattern::smallest(3), 0));
}

#[test]
fn wrapping_generator_pairs_the_ends() {
    for n in 2..=5 {
        let l = 2 * n;
        for p in link_patterns(n).unwrap() {
            let (img, loops) = tl_e(l, &p);
            assert_eq!(img.partner(l), 1);
            assert_eq!(loops, u32::from(p.partner(l) == 1));
            if loops == 0 {
                assert_eq!(img.partner(p.partner(l)), p.partner(1));
            }
        }
    }
}

#[test]
fn temperley_lieb_relations() {
    for n in 1..=5 {
        let l = 2 * n;
        for p in link_patterns(n).unwrap() {
            for i in 1..l {
                let (once, k1) = act(&[i], &p);
                let (twice, k2) = act(&[i, i], &p);
                assert_eq!(twice, once);
                assert_eq!(k2, k1 + 1);
                for j in [i + 1, i.wrapping_sub(1)] {
                    if (1..l).contains(&j) {
                        assert_eq!(act(&[i, j, i], &p), (once.clone(), k1));
                    }
                }
                for j in 1..l {
                    if i.abs_diff(j) > 1 {
                        assert_eq!(act(&[i, j], &p), act(&[j, i], &p));
                    }
                }
            }
        }
    }
}

#[test]
fn affine_relations() {
    for n in 2..=5 {
        let l = 2 * n;
        let next = |i: usize| i % l + 1;
        for p in link_patterns(n).unwrap() {
            assert_eq!(p.rotate_by(l), p);
            for i in 1..=l {
                // rho e_i = e_{i+1} rho
                let (a, ka) = tl_e(i, &p);
                let (b, kb) = tl_e(next(i), &p.rotate());
                assert_eq!((a.rotate(), ka), (b, kb));
                let (once, k1) = tl_e(i, &p);
                assert_eq!(act(&[i, next(i), i], &p), (once.clone(), k1));
                assert_eq!(act(&[next(i), i, next(i)], &p), tl_e(next(i), &p));
            }
        }
    }
}

#[test]
fn rotation_keeps_patterns_noncrossing() {
    for p in link_patterns(5).unwrap() {
        assert!(p.rotate().is_noncrossing());
    }
}

#[test]
fn transfer_matrix_is_stochastic() {
    assert_eq!(cpl_transfer(2, &rat(1, 3)).unwrap(), ExactMatrix::from_rows(vec![vec![rat(1, 1)]]));
    for l in [2, 4, 6, 8, 10] {
        for p in [rat(1, 2), rat(1, 3)] {
            let t = cpl_transfer(l, &p).unwrap();
            for j in 0..t.cols() {
                let s: BigRational = (0..t.rows()).map(|i| t.get(i, j).clone()).sum();
                assert_eq!(s, rat(1, 1), "L={} column {}", l, j);
                assert!((0..t.rows()).all(|i| *t.get(i, j) >= rat(0, 1)));
            }
        }
    }
    assert!(cpl_transfer(4, &rat(1, 1)).is_err());
    assert!(cpl_transfer(5, &rat(1, 2)).is_err());
}

#[test]
fn transfer_matrices_commute() {
    for l in [2, 4, 6, 8] {
        let a = cpl_transfer(l, &rat(1, 2)).unwrap();
        let b = cpl_transfer(l, &rat(1, 3)).unwrap();
        let c = cpl_transfer(l, &rat(4, 5)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap(), "L={}", l);
        assert_eq!(b.mul(&c).unwrap(), c.mul(&b).unwrap(), "L={}", l);
    }
}

#[test]
fn transfer_matrix_commutes_with_rotation() {
    for n in 2..=4 {
        let pats = link_patterns(n).unwrap();
        let idx = pattern_index(&pats);
        let t = cpl_transfer(2 * n, &rat(2, 7)).unwrap();
        for (j, p) in pats.iter().enumerate() {
            for (i, q) in pats.iter().enumerate() {
                assert_eq!(t.get(i, j), t.get(idx[&q.rotate()], idx[&p.rotate()]));
            }
        }
    }
}

#[test]
fn kernel_does_not_depend_on_p() {
    for l in [2, 4, 6, 8, 10] {
        assert_eq!(steady_state_at(l, &rat(1, 2)).unwrap(), steady_state_at(l, &rat(1, 3)).unwrap(), "L={}", l);
    }
}

#[test]
fn small_steady_states() {
    let s2 = steady_state(2).unwrap();
    assert_eq!(s2, vec![(lp("(1 2)"), rat(1, 1))]);
    // the two patterns of size 4 are rotations of each other
    let s4 = steady_state(4).unwrap();
    assert_eq!(s4, vec![(lp("(1 4)(2 3)"), rat(1, 2)), (lp("(1 2)(3 4)"), rat(1, 2))]);
}

#[test]
fn steady_state_size_eight() {
    let s = steady_state(8).unwrap();
    let mut mult: HashMap<BigRational, usize> = HashMap::new();
    for (_, v) in &s {
        *mult.entry(v.clone()).or_default() += 1;
    }
    let want: HashMap<BigRational, usize> = [(rat(1, 42), 4), (rat(3, 42), 8), (rat(7, 42), 2)].into_iter().collect();
    assert_eq!(mult, want);
    assert_eq!(value_of(&s, &LinkPattern::smallest(4)), rat(1, 42));
    assert_eq!(value_of(&s, &LinkPattern::nearest(4)), rat(7, 42));
}

#[test]
fn steady_state_is_fixed_and_annihilated_by_the_hamiltonian() {
    for n in 1..=5 {
        let l = 2 * n;
        let s = steady_state(l).unwrap();
        let pats: Vec<LinkPattern> = s.iter().map(|(p, _)| p.clone()).collect();
        let idx = pattern_index(&pats);
        let t = cpl_transfer(l, &rat(3, 5)).unwrap();
        for i in 0..pats.len() {
            let v: BigRational = (0..pats.len()).map(|j| t.get(i, j) * &s[j].1).sum();
            assert_eq!(v, s[i].1);
        }
        // sum_i (e_i - 1) Psi = 0 with every loop weighted 1
        let mut h = vec![rat(0, 1); pats.len()];
        for (j, (p, v)) in s.iter().enumerate() {
            for i in 1..=l {
                let (img, _) = tl_e(i, p);
                h[idx[&img]] += v;
                h[j] -= v;
            }
        }
        if l > 2 {
            assert!(h.iter().all(|x| x.is_zero()), "L={}", l);
        }
    }
}

fn check_properties(n: usize) {
    let s = steady_state(2 * n).unwrap();
    let an = BigRational::from_integer(asm_count(n));
    let an1 = BigRational::from_integer(asm_count(n - 1));
    let min = s.iter().map(|(_, v)| v.clone()).min().unwrap();
    let max = s.iter().map(|(_, v)| v.clone()).max().unwrap();
    assert_eq!(min, rat(1, 1) / &an, "n={}", n);
    for (p, v) in &s {
        assert!((v / &min).is_integer());
        assert_eq!(p.is_all_parallel(), *v == min, "n={} {}", n, p);
    }
    if n <= 5 {
        assert_eq!(max, &an1 / &an, "n={}", n);
        for (p, v) in &s {
            assert_eq!(p.is_nearest_neighbour(), *v == max, "n={} {}", n, p);
        }
    }
}

#[test]
fn conjectured_properties_up_to_five() {
    for n in 2..=5 {
        check_properties(n);
    }
}

#[test]
fn conjectured_properties_at_six() {
    check_properties(6);
}

#[test]
fn fpl_configurations_are_valid_and_distinct() {
    for n in 1..=5 {
        let cfgs = enumerate_dwbc(n).unwrap();
        let fpls: HashSet<FplConfig> = cfgs.iter().map(fpl_of).collect();
        assert_eq!(fpls.len(), cfgs.len());
        for f in &fpls {
            f.validate().unwrap();
            let p = f.link_pattern().unwrap();
            assert_eq!(p.size(), 2 * n);
            assert!(p.is_noncrossing());
        }
    }
}

#[test]
fn census_values() {
    let c3 = fpl_census(3).unwrap();
    assert_eq!(c3.len(), 5);
    assert_eq!(c3.iter().map(|(_, a)| a.clone()).sum::<BigInt>(), int(7));
    let c4 = fpl_census(4).unwrap();
    for (p, a) in &c4 {
        if p.is_nearest_neighbour() {
            assert_eq!(*a, int(7));
        }
    }
    for n in 1..=5 {
        let c = fpl_census(n).unwrap();
        assert_eq!(c.iter().map(|(_, a)| a.clone()).sum::<BigInt>(), asm_count(n));
        for (p, a) in &c {
            if p.is_all_parallel() {
                assert_eq!(*a, int(1), "n={} {}", n, p);
            }
            assert!(*a >= int(1));
        }
    }
    assert!(matches!(fpl_census(6), Err(Error::SizeGuard { .. })));
}

#[test]
fn census_is_rotation_invariant() {
    for n in 2..=5 {
        let c: HashMap<LinkPattern, BigInt> = fpl_census(n).unwrap().into_iter().collect();
        for (p, a) in &c {
            assert_eq!(c[&p.rotate()], *a);
        }
    }
}

#[test]
fn razumov_stroganov_up_to_four() {
    assert_eq!(rs_offset().unwrap(), 0);
    for n in 1..=4 {
        let r = rs_check(n).unwrap();
        assert!(r.holds(), "n={} {:?}", n, r);
        assert!(r.multiset_equal);
    }
    let r = rs_check(4).unwrap();
    assert!(r.psi.iter().any(|(_, v)| *v == rat(7, 42)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rows_and_generators_stay_planar(n in 1usize..=6, k in 0usize..200, word in any::<u32>(), i in 1usize..=12) {
        let pats = link_patterns(n).unwrap();
        let p = &pats[k % pats.len()];
        let l = 2 * n;
        let w = word & ((1u32 << l) - 1);
        prop_assert!(cpl_row(p, w).is_noncrossing());
        let i = (i - 1) % l + 1;
        prop_assert!(tl_e(i, p).0.is_noncrossing());
        // a row commutes with rotating both the pattern and the word
        let rw = ((w << 1) | (w >> (l - 1))) & ((1u32 << l) - 1);
        prop_assert_eq!(cpl_row(&p.rotate(), rw), cpl_row(p, w).rotate());
    }
}
