use std::collections::{BTreeMap, BTreeSet};

use latcol_core::fpgroup::{low_index_subgroups, Presentation};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        q[j] = i;
    }
    q
}

/// Transitive right actions of the presentation on `0..n`, up to relabelling.
fn brute_force_classes(pres: &Presentation, n: usize) -> usize {
    let perms = permutations(n);
    let involutions: Vec<&Vec<usize>> = perms.iter().filter(|p| (0..n).all(|i| p[p[i]] == i)).collect();
    let gens = pres.generator_count();
    let choices: Vec<Vec<&Vec<usize>>> = (0..gens)
        .map(|g| if pres.is_involution(g) { involutions.clone() } else { perms.iter().collect() })
        .collect();
    let mut classes = BTreeSet::new();
    let mut idx = vec![0usize; gens];
    'outer: loop {
        let action: Vec<&Vec<usize>> = (0..gens).map(|g| choices[g][idx[g]]).collect();
        let inverses: Vec<Vec<usize>> = action.iter().map(|p| inverse(p)).collect();
        let holds = pres.relators().iter().all(|r| {
            (0..n).all(|start| {
                let mut x = start;
                for l in r.letters() {
                    x = if l.is_inverse() { inverses[l.generator()][x] } else { action[l.generator()][x] };
                }
                x == start
            })
        });
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for p in &action {
                if !seen[p[x]] {
                    seen[p[x]] = true;
                    stack.push(p[x]);
                }
            }
        }
        if holds && seen.iter().all(|&s| s) {
            let key = perms
                .iter()
                .map(|sigma| {
                    let sinv = inverse(sigma);
                    action.iter().map(|p| (0..n).map(|i| sigma[p[sinv[i]]]).collect::<Vec<_>>()).collect::<Vec<_>>()
                })
                .min()
                .unwrap();
            classes.insert(key);
        }
        let mut k = 0;
        loop {
            if k == gens {
                break 'outer;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    classes.len()
}

fn low_index_counts(pres: &Presentation, max: usize) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for r in low_index_subgroups(pres, max).unwrap() {
        *counts.entry(r.index()).or_insert(0) += 1;
    }
    counts
}

#[test]
fn line_group_matches_brute_force() {
    let pres = Presentation::for_dimension(1).unwrap();
    let counts = low_index_counts(&pres, 5);
    for n in 1..=5 {
        assert_eq!(counts.get(&n).copied().unwrap_or(0), brute_force_classes(&pres, n), "index {n}");
    }
}

#[test]
fn square_group_matches_brute_force() {
    let pres = Presentation::for_dimension(2).unwrap();
    let counts = low_index_counts(&pres, 4);
    for n in 1..=4 {
        assert_eq!(counts.get(&n).copied().unwrap_or(0), brute_force_classes(&pres, n), "index {n}");
    }
}

#[test]
fn canonical_forms_are_distinct() {
    for (d, max) in [(1, 8), (2, 8), (3, 4)] {
        let pres = Presentation::for_dimension(d).unwrap();
        let records = low_index_subgroups(&pres, max).unwrap();
        let forms: BTreeSet<_> = records.iter().map(|r| r.canonical_table_form.clone()).collect();
        assert_eq!(forms.len(), records.len());
        for r in &records {
            assert!(r.coset_table.is_closed_for(&pres));
        }
    }
}
