use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fk_quadratic::{
    fk_antisymmetric, fk_presentation, general_presentation, graded_dims, Engine, GradedDims, Signs,
};
use crate::linalg::Echelon;

use super::super::report::Check;

fn record_dims(check: &mut Check, label: &str, d: &GradedDims, want: &[usize]) {
    if d.truncated {
        check.cases += 1;
        check.budget_exceeded = true;
        check.examples.push(format!("{label}: truncated after {:?}", d.dims));
        return;
    }
    check.record(d.dims == want, || format!("{label}: {:?}", d.dims));
}

pub(super) fn fk_dims(max_n: usize, budget: u64) -> Result<Vec<Check>> {
    // known totals with the degree where the algebra vanishes
    let anchors: [(usize, usize, &[usize]); 3] = [
        (2, 2, &[1, 1, 0]),
        (3, 12, &[1, 3, 4, 3, 1, 0]),
        (4, 576, &[1, 6, 19, 42, 71, 96, 106, 96, 71, 42, 19, 6, 1, 0]),
    ];
    let mut checks = Vec::new();
    let mut agree = Check::new("fk.engine_agreement");
    for (n, total, profile) in anchors {
        if n > max_n {
            continue;
        }
        let p = fk_presentation(n)?;
        let d = profile.len() - 1;
        let lin = graded_dims(&p, d, Engine::Linear, budget);
        let rw = graded_dims(&p, d, Engine::Rewrite, budget);
        let mut c = Check::new(format!("fk.e{n}_total"));
        for (label, g) in [("linear", &lin), ("rewrite", &rw)] {
            record_dims(&mut c, label, g, profile);
            c.record(g.total() == total && g.vanishes_at == Some(d), || format!("{label}: total {}", g.total()));
        }
        checks.push(c);
        agree.record(lin.dims == rw.dims, || format!("E_{n}: {:?} vs {:?}", lin.dims, rw.dims));
        let palindrome: Vec<usize> = lin.dims[..d].iter().rev().copied().collect();
        agree.record(lin.dims[..d] == palindrome[..], || format!("E_{n} profile is not symmetric"));
    }

    // the antisymmetric form and random sign choices
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut others = vec![("antisymmetric n=3".to_string(), fk_antisymmetric(3)?, 6)];
    if max_n >= 4 {
        others.push(("antisymmetric n=4".to_string(), fk_antisymmetric(4)?, 7));
    }
    for k in 0..6 {
        others.push((format!("random signs n=3 #{k}"), general_presentation(3, &Signs::random(3, &mut rng))?, 7));
    }
    for (label, p, d) in &others {
        let lin = graded_dims(p, *d, Engine::Linear, budget);
        let rw = graded_dims(p, *d, Engine::Rewrite, budget);
        if lin.truncated || rw.truncated {
            agree.cases += 1;
            agree.budget_exceeded = true;
            continue;
        }
        agree.record(lin.dims == rw.dims, || format!("{label}: {:?} vs {:?}", lin.dims, rw.dims));
    }
    checks.push(agree);

    let mut forms = Check::new("fk.presentation_forms_span_equal");
    for n in 2..=max_n.max(2) + 1 {
        let (a, b) = (fk_presentation(n)?, fk_antisymmetric(n)?);
        let mut e = Echelon::new();
        for v in a.relation_vectors() {
            e.insert(&v);
        }
        let contained = b.relation_vectors().iter().all(|v| e.contains(v));
        forms.record(contained && b.relation_rank() == e.rank(), || format!("n = {n}"));
    }
    checks.push(forms);

    let mut relabel = Check::new("fk.relabel_invariance");
    for _ in 0..4 {
        let s = Signs::random(3, &mut rng);
        let base = graded_dims(&general_presentation(3, &s)?, 6, Engine::Linear, budget);
        for sigma in [[1usize, 0, 2], [1, 2, 0]] {
            let moved = graded_dims(&general_presentation(3, &s.relabel(&sigma)?)?, 6, Engine::Linear, budget);
            relabel.record(moved == base, || format!("{:?} vs {:?}", moved.dims, base.dims));
        }
    }
    checks.push(relabel);
    Ok(checks)
}
