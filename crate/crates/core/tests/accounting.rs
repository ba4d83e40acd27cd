use sdn_core::accounting::{current_bytes, is_active, measure, CountingAllocator};

#[global_allocator]
static ALLOC: CountingAllocator = CountingAllocator;

#[test]
fn peak_sees_freed_memory() {
    assert!(is_active());
    let before = current_bytes();
    let ((), peak) = measure(|| {
        let a = vec![0u8; 1 << 20];
        drop(std::hint::black_box(a));
        let b = vec![0u8; 1 << 10];
        drop(std::hint::black_box(b));
    });
    assert!((1 << 20..(1 << 20) + 4096).contains(&peak));
    assert_eq!(current_bytes(), before);
}

#[test]
fn nested_measurements() {
    let (inner, outer) = measure(|| {
        let keep = vec![0u64; 1000];
        let ((), inner) = measure(|| drop(std::hint::black_box(vec![0u8; 100])));
        drop(keep);
        inner
    });
    assert!((100..200).contains(&inner));
    assert!(outer >= 8000);
}

#[test]
fn other_threads_do_not_count() {
    let ((), peak) = measure(|| {
        std::thread::spawn(|| drop(std::hint::black_box(vec![0u8; 1 << 22])))
            .join()
            .unwrap();
    });
    assert!(peak < 1 << 20);
}
