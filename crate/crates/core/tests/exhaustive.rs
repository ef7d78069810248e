use lietype::unipotent::{fixed_flags, is_regular_unipotent};
use lietype::{Family, FieldTable, FqMatrix, LieGroupData};

fn group(family: Family, n: usize, p: u32, r: u32) -> LieGroupData {
    LieGroupData::new(family, n, FieldTable::new(p, r, None).unwrap()).unwrap()
}

fn small_groups() -> Vec<LieGroupData> {
    vec![
        group(Family::GL, 2, 3, 1),
        group(Family::GL, 3, 2, 1),
        group(Family::GL, 3, 2, 2),
        group(Family::SL, 3, 3, 1),
        group(Family::Sp, 2, 5, 1),
        group(Family::Sp, 4, 3, 1),
        group(Family::Sp, 4, 2, 1),
    ]
}

#[test]
fn torus_acts_linearly_on_root_subgroups() {
    for g in small_groups() {
        let f = g.field();
        for alpha in g.root_system().all_roots() {
            for t in g.torus_generators() {
                let chi = g.character(&alpha, &t).unwrap();
                for c in f.elements() {
                    let x = g.root_subgroup_element(&alpha, c).unwrap();
                    let expected = g.root_subgroup_element(&alpha, f.mul(chi, c)).unwrap();
                    assert_eq!(x.conjugate_by(&t, f), expected, "{} {alpha}", g.name());
                }
            }
        }
    }
}

#[test]
fn u_s_is_normal_in_u() {
    for g in small_groups() {
        let f = g.field();
        let u: Vec<FqMatrix> = g.enumerate_u().unwrap().collect();
        assert_eq!(u.len() as u128, g.u_order());
        let gens = g.u_generators();
        for s in 0..g.rank() {
            let u_s: Vec<&FqMatrix> = u.iter().filter(|x| g.in_u_s(x, s).unwrap()).collect();
            assert_eq!(
                u_s.len() as u128 * f.q() as u128,
                g.u_order(),
                "{} s={s}",
                g.name()
            );
            for x in &u_s {
                for a in &gens {
                    assert!(g.in_u_s(&x.conjugate_by(a, f), s).unwrap());
                    assert!(g.in_u_s(&x.mul(&u_s[0].inverse(f).unwrap(), f), s).unwrap());
                }
            }
        }
    }
}

#[test]
fn regularity_agrees_with_fixed_flags() {
    for (n, p, r) in [(2, 2, 1), (2, 5, 1), (3, 3, 1), (3, 2, 2), (4, 2, 1)] {
        for family in [Family::GL, Family::SL] {
            let g = group(family, n, p, r);
            for x in g.enumerate_u().unwrap() {
                let unique = fixed_flags(&g, std::slice::from_ref(&x)).unwrap().len() == 1;
                assert_eq!(
                    is_regular_unipotent(&g, &x).unwrap(),
                    unique,
                    "{}",
                    g.name()
                );
            }
        }
    }
}

#[test]
fn conjugation_by_borel_preserves_regularity() {
    for g in small_groups() {
        let f = g.field();
        let mut conjugators = g.u_generators();
        conjugators.extend(g.torus_generators());
        for x in g.enumerate_u().unwrap() {
            let regular = is_regular_unipotent(&g, &x).unwrap();
            for b in &conjugators {
                let y = x.conjugate_by(b, f);
                assert!(g.in_u(&y));
                assert_eq!(
                    is_regular_unipotent(&g, &y).unwrap(),
                    regular,
                    "{}",
                    g.name()
                );
            }
        }
    }
}
