mod common;

use common::seifert::{alexander_two_bridge, even_continued_fraction};
use suturekit::alexander::{alexander_fox, fox_minor, symmetrize};
use suturekit::diagram::{parse_braid, GroupPresentation};
use suturekit::table::builtin;

#[test]
fn continued_fractions() {
    assert_eq!(even_continued_fraction(3, 1), vec![1, 1]);
    assert_eq!(even_continued_fraction(5, 2), vec![1, -1]);
    assert_eq!(even_continued_fraction(7, 3), vec![1, 2]);
    assert_eq!(even_continued_fraction(1, 0), Vec::<i64>::new());
}

#[test]
fn oracle_known_values() {
    assert_eq!(alexander_two_bridge(3, 1), vec![(-1, 1), (0, -1), (1, 1)]);
    assert_eq!(alexander_two_bridge(5, 2), vec![(-1, -1), (0, 3), (1, -1)]);
    assert_eq!(alexander_two_bridge(7, 3), vec![(-1, 2), (0, -3), (1, 2)]);
    assert_eq!(alexander_two_bridge(1, 0), vec![(0, 1)]);
}

#[test]
fn fox_matches_seifert_oracle_on_table() {
    for row in builtin() {
        let (p, q) = row.two_bridge.expect("table knots are 2-bridge");
        let d = row.diagram().unwrap();
        let fox = alexander_fox(&GroupPresentation::wirtinger(&d)).unwrap();
        let got: Vec<(i32, i64)> = fox.terms().collect();
        assert_eq!(got, alexander_two_bridge(p, q), "{}", row.id);
    }
}

#[test]
fn every_minor_gives_the_same_polynomial() {
    for row in builtin().iter().filter(|r| !r.pd.is_empty()) {
        let p = GroupPresentation::wirtinger(&row.diagram().unwrap());
        let expected = alexander_fox(&p).unwrap();
        for r in 0..p.relations().len() {
            for c in 0..p.n_generators() {
                let m = fox_minor(&p, r, c).unwrap();
                assert_eq!(symmetrize(&m).unwrap().poly, expected, "{} minor ({r},{c})", row.id);
            }
        }
    }
}

#[test]
fn degree_bounded_by_seifert_genus() {
    for row in builtin() {
        let d = row.diagram().unwrap();
        let fox = alexander_fox(&GroupPresentation::wirtinger(&d)).unwrap();
        let bound = suturekit::seifert_genus_upper(&d).genus_upper as i32;
        assert!(fox.max_exp().unwrap() <= bound, "{}", row.id);
    }
}

#[test]
fn braid_and_pd_trefoil_agree() {
    let braid = alexander_fox(&GroupPresentation::wirtinger(&parse_braid("s1 s1 s1").unwrap())).unwrap();
    let pd = alexander_fox(&GroupPresentation::wirtinger(&builtin()[1].diagram().unwrap())).unwrap();
    assert_eq!(braid, pd);
}
