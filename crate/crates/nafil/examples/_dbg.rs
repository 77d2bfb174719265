// scratch debug: is canonical_form(RSAIP9) actually a relabeling of RSAIP9?
use nafil::catalog;
use nafil::iso::{canonical_form, canonical_form_with_perm, are_isomorphic, fingerprint};

fn main() {
    let t = catalog::builtin("RSAIP9").unwrap();
    let (c, sigma) = canonical_form_with_perm(&t).unwrap();
    println!("sigma: {:?}", sigma);
    let relabeled = t.relabel(&sigma);
    println!("relabel(t, sigma) == canon: {}", relabeled == c);
    println!("fp(t) == fp(c): {}", fingerprint(&t).unwrap() == fingerprint(&c).unwrap());
    println!("canon cells: {:?}", c.cells());
    // brute force lexmin over all 8! perms of 2..=9 would be 40320 relabelings; do it
    let n = t.order();
    let mut best = t.cells().to_vec();
    let mut perm: Vec<u8> = (2..=n as u8).collect();
    let mut count = 0u64;
    permutohedron_heap(&mut perm.clone(), &mut |p: &[u8]| {
        let mut full: Vec<u8> = vec![0; n + 1];
        full[1] = 1;
        for (i, &x) in p.iter().enumerate() {
            full[i + 2] = x; // label i+2 gets... wait, relabel wants perm[old] = new
        }
        // build perm[old]=new: old elements 2..=9 mapped to p
        let mut m: Vec<u8> = vec![0; n + 1];
        m[1] = 1;
        for (old, &new) in (2..=n).zip(p.iter()) {
            m[old] = new;
        }
        let r = t.relabel(&m);
        if r.cells() < &best[..] {
            best = r.cells().to_vec();
        }
        count += 1;
    });
    println!("brute forced {} perms", count);
    println!("brute best == canon: {}", best == c.cells());
    if best != c.cells() {
        println!("brute best:  {:?}", best);
    }
    let iso = are_isomorphic(&t, &c).unwrap();
    println!("are_isomorphic(t, canon): {:?}", iso.is_some());
}

fn permutohedron_heap(arr: &mut Vec<u8>, f: &mut dyn FnMut(&[u8])) {
    let n = arr.len();
    let mut c = vec![0usize; n];
    f(arr);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 { arr.swap(0, i); } else { arr.swap(c[i], i); }
            f(arr);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
