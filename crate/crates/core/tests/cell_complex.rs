use cacti::cells::{
    boundary, configuration_space_betti, enumerate_cells, homology, is_cell, poset_oracle_homology,
    ChainComplex,
};

fn padded(mut v: Vec<usize>, len: usize) -> Vec<usize> {
    v.resize(len, 0);
    v
}

/// Brute force over all words of bounded length.
fn brute_force_cells(n: usize, m: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &words {
            for l in 1..=n {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        for w in &next {
            if is_cell(w, n, m) {
                out.push(w.clone());
            }
        }
        words = next;
    }
    out.sort();
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for (n, m, len) in [(2, 2, 5), (3, 1, 4), (3, 2, 7), (2, 3, 6)] {
        let mut cells: Vec<Vec<usize>> = enumerate_cells(n, m)
            .unwrap()
            .concat()
            .into_iter()
            .map(|c| c.labels().to_vec())
            .collect();
        cells.sort();
        assert_eq!(cells, brute_force_cells(n, m, len), "n={n} m={m}");
    }
}

#[test]
fn permutations_at_order_one() {
    let fact = [1, 1, 2, 6, 24, 120];
    for (n, &f) in fact.iter().enumerate().skip(1) {
        let c = enumerate_cells(n, 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].len(), f);
    }
}

#[test]
fn faces_are_cells() {
    for (n, m) in [(3, 2), (3, 3), (4, 2), (2, 5)] {
        for cell in enumerate_cells(n, m).unwrap().concat() {
            for (face, s) in boundary(&cell, n, m).unwrap() {
                assert!(is_cell(face.labels(), n, m));
                assert_eq!(face.len() + 1, cell.len());
                assert!(s == 1 || s == -1);
            }
        }
    }
}

#[test]
fn two_labels_give_spheres() {
    for m in 1..=6 {
        let h = homology(2, m).unwrap();
        assert_eq!(h.fvector, vec![2; m]);
        let mut expect = vec![0; m];
        expect[0] += 1;
        expect[m - 1] += 1;
        assert_eq!(h.betti, expect);
    }
}

#[test]
fn betti_numbers_match_configuration_spaces() {
    for (n, m) in [(2, 2), (3, 2), (4, 2), (2, 3), (2, 4), (3, 3)] {
        let h = homology(n, m).unwrap();
        let expect = configuration_space_betti(n, m);
        assert_eq!(h.betti, padded(expect, h.betti.len()), "n={n} m={m}");
        assert!(h.torsion.iter().all(Vec::is_empty));
    }
}

#[test]
fn poset_oracle_agrees_at_order_two() {
    for n in 1..=4 {
        let h = homology(n, 2).unwrap();
        assert_eq!(
            poset_oracle_homology(n, 2_000_000).unwrap(),
            h.betti,
            "n={n}"
        );
    }
}

#[test]
fn euler_characteristic_vanishes() {
    for n in 2..=4 {
        assert_eq!(homology(n, 2).unwrap().euler, 0);
    }
}

#[test]
fn boundary_squares_to_zero() {
    for (n, m) in [(3, 4), (4, 3)] {
        ChainComplex::build(n, m, 100_000)
            .unwrap()
            .check_square_zero()
            .unwrap();
    }
}
