use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use rekit::baxter::{a_spectral, check_spectral_re, check_spectral_ybe};
use rekit::kmatrix::{assemble, enumerate_families};
use rekit::rmatrix::s_hat;
use rekit::verifier::{check_braid, check_re, support_pattern_crosscheck};
use rekit::{CheckMode, Grading, KFamily, KParams, Ring, Scalar};

fn grading(s: &str) -> Grading {
    s.parse().unwrap()
}

fn scalars(c: &mut Criterion) {
    let ring = Ring::standard(2);
    let a = Scalar::parse("(q^2 - lambda*mu)/(q + mu)", &ring).unwrap();
    let b = Scalar::parse("(lambda - q*y1)/(q^2 + 1)", &ring).unwrap();
    c.bench_function("scalar add", |bench| {
        bench.iter(|| black_box(&a) + black_box(&b))
    });
    c.bench_function("scalar mul", |bench| {
        bench.iter(|| black_box(&a) * black_box(&b))
    });
}

fn braid(c: &mut Criterion) {
    let g = grading("0110");
    c.bench_function("s_hat N=4", |bench| bench.iter(|| s_hat(black_box(&g))));
    let s = s_hat(&g);
    c.bench_function("braid relation N=4 symbolic", |bench| {
        bench.iter(|| check_braid(s.matrix(), CheckMode::Symbolic).unwrap())
    });
}

fn reflection(c: &mut Criterion) {
    let g = grading("0110");
    let f: KFamily = "type1:1,4".parse().unwrap();
    let a = assemble(&f, &KParams::generic(&f, 4), 4).unwrap();
    let s = s_hat(&g);
    c.bench_function("reflection equation N=4 symbolic", |bench| {
        bench.iter(|| check_re(s.matrix(), &a, CheckMode::Symbolic).unwrap())
    });
    c.bench_function("families N=4 symbolic", |bench| {
        bench.iter(|| {
            for f in enumerate_families(&g) {
                let a = assemble(&f, &KParams::generic(&f, 4), 4).unwrap();
                assert!(
                    check_re(s.matrix(), &a, CheckMode::Symbolic)
                        .unwrap()
                        .is_zero
                );
            }
        })
    });
    let g3 = grading("010");
    c.bench_function("support pattern crosscheck N=3", |bench| {
        bench.iter(|| support_pattern_crosscheck(&g3, 0).unwrap())
    });
}

fn spectral(c: &mut Criterion) {
    let g = grading("000");
    let s = s_hat(&g);
    let f: KFamily = "type1:1,2".parse().unwrap();
    let p = KParams::generic(&f, 3);
    let ax = a_spectral(&assemble(&f, &p, 3).unwrap(), &f, &p).unwrap();
    let mut group = c.benchmark_group("spectral");
    group.sample_size(10);
    group.bench_function("spectral ybe N=3 symbolic", |bench| {
        bench.iter(|| check_spectral_ybe(&s, CheckMode::Symbolic).unwrap())
    });
    group.bench_function("spectral re cubic N=3 symbolic", |bench| {
        bench.iter(|| check_spectral_re(&s, &ax, CheckMode::Symbolic).unwrap())
    });
    group.finish();
}

criterion_group!(benches, scalars, braid, reflection, spectral);
criterion_main!(benches);
