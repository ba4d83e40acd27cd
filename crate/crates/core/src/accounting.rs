//! Heap accounting for space measurements.
//!
//! Install [`CountingAllocator`] as the global allocator of a binary, then
//! wrap the code to measure in [`measure`]. Counters are per thread, so
//! measurements on one thread are not disturbed by others.

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::Cell;

/// Forwards to the system allocator and counts live bytes per thread.
pub struct CountingAllocator;

thread_local! {
    static CURRENT: Cell<isize> = const { Cell::new(0) };
    static PEAK: Cell<isize> = const { Cell::new(0) };
}

#[inline]
fn note(delta: isize) {
    let _ = CURRENT.try_with(|c| {
        let v = c.get() + delta;
        c.set(v);
        let _ = PEAK.try_with(|p| {
            if v > p.get() {
                p.set(v);
            }
        });
    });
}

unsafe impl GlobalAlloc for CountingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc(layout);
        if !p.is_null() {
            note(layout.size() as isize);
        }
        p
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc_zeroed(layout);
        if !p.is_null() {
            note(layout.size() as isize);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        note(-(layout.size() as isize));
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        let p = System.realloc(ptr, layout, new_size);
        if !p.is_null() {
            note(new_size as isize - layout.size() as isize);
        }
        p
    }
}

/// Bytes currently allocated by this thread (net of frees), as seen by
/// [`CountingAllocator`].
pub fn current_bytes() -> isize {
    CURRENT.with(Cell::get)
}

/// Runs `f` and returns its result with the peak number of heap bytes
/// allocated during the call beyond what was live at its start.
///
/// Memory still held by the result counts toward the peak. Returns a peak
/// of 0 if [`CountingAllocator`] is not the global allocator.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, usize) {
    let base = CURRENT.with(Cell::get);
    let saved = PEAK.with(|p| p.replace(base));
    let r = f();
    let peak = PEAK.with(Cell::get);
    PEAK.with(|p| p.set(saved.max(peak)));
    (r, (peak - base).max(0) as usize)
}

/// Whether [`CountingAllocator`] is installed in this binary.
pub fn is_active() -> bool {
    let (_, peak) = measure(|| std::hint::black_box(vec![0u8; 64]));
    peak >= 64
}
