//! Sequential vs. rayon timings for the heavier exhaustive routines.

use std::hint::black_box;

use aqar_core::enumerate::{enumerate_transitive_classes, enumerate_variety_groups};
use aqar_core::groupmodel::VarietyParams;
use aqar_core::matgrp::{classify_elem_abelian_r, GlSpace};
use aqar_core::{Config, ExecMode};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn cfg(mode: ExecMode) -> Config {
    Config { mode, ..Config::default() }
}

fn transitive(c: &mut Criterion) {
    let mut g = c.benchmark_group("transitive_classes_n6");
    g.sample_size(10);
    for (name, mode) in MODES {
        let cfg = cfg(mode);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_transitive_classes(black_box(6), 2, 3, &cfg).unwrap())
        });
    }
    g.finish();
}

fn census(c: &mut Criterion) {
    let params = VarietyParams::new([2, 3, 5], [2, 1, 1]).unwrap();
    let mut g = c.benchmark_group("census_2_3_5");
    g.sample_size(10);
    for (name, mode) in MODES {
        let cfg = cfg(mode);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_variety_groups(black_box(&params), &cfg).unwrap())
        });
    }
    g.finish();
}

fn gl_classes(c: &mut Criterion) {
    let sp = GlSpace::make(2, 1, 3).unwrap();
    let mut g = c.benchmark_group("gl3_2_r3");
    g.sample_size(10);
    for (name, mode) in MODES {
        let cfg = cfg(mode);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| classify_elem_abelian_r(black_box(&sp), 3, &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, transitive, census, gl_classes);
criterion_main!(benches);
