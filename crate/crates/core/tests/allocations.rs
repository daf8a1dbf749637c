//! Allocation count per sample grows at most linearly in the arc count.

use std::alloc::{GlobalAlloc, Layout, System};
use std::sync::atomic::{AtomicU64, Ordering};

use rnashapes::sampler::{sample_rng, ShapeSampler};

struct Counting;

static ALLOCATIONS: AtomicU64 = AtomicU64::new(0);

unsafe impl GlobalAlloc for Counting {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        ALLOCATIONS.fetch_add(1, Ordering::Relaxed);
        unsafe { System.alloc(layout) }
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        unsafe { System.dealloc(ptr, layout) }
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        ALLOCATIONS.fetch_add(1, Ordering::Relaxed);
        unsafe { System.realloc(ptr, layout, new_size) }
    }
}

#[global_allocator]
static GLOBAL: Counting = Counting;

/// Allocations per sample divided by the arc count, maximized over samples.
fn worst_ratio(g: usize, samples: u64) -> f64 {
    let sampler = ShapeSampler::new(g, None).unwrap();
    let mut worst = 0.0f64;
    for i in 0..samples {
        let mut rng = sample_rng(99, i);
        let before = ALLOCATIONS.load(Ordering::Relaxed);
        let s = sampler.sample(&mut rng).unwrap();
        let used = ALLOCATIONS.load(Ordering::Relaxed) - before;
        worst = worst.max(used as f64 / s.arcs as f64);
    }
    worst
}

#[test]
fn allocations_per_arc_are_bounded() {
    let ratios: Vec<f64> = (1..=5).map(|g| worst_ratio(g, 500)).collect();
    println!("worst allocations per arc by genus: {ratios:?}");
    for r in &ratios {
        assert!(*r <= 60.0, "{ratios:?}");
    }
    // fixed overhead amortizes: larger genera (more arcs) are no worse
    assert!(ratios[4] <= ratios[0], "{ratios:?}");
}
