//! C ABI for the rigidmv library.
//!
//! Graphs are opaque handles created from JSON or a generator name and must
//! be released with [`rmv_graph_free`]. Strings returned through `char**`
//! out-parameters are owned by the caller and released with
//! [`rmv_string_free`]. Every function returns an [`RmvStatus`]; on error a
//! thread-local message is readable via [`rmv_last_error_message`] until the
//! next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use rigidmv::graph::{Dim, HClass, RigidGraph};
use rigidmv::mixedvol;
use rigidmv::polysys::{Formulation, SupportSystem};

/// Opaque graph handle.
pub struct RmvGraph(RigidGraph);

#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum RmvStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    UnknownName = 4,
    InvalidGraph = 5,
    InvalidArgument = 6,
    Compute = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn fail(status: RmvStatus, msg: &str) -> RmvStatus {
    set_error(msg);
    status
}

/// Message of the most recent error on this thread. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rmv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, RmvStatus> {
    if ptr.is_null() {
        set_error("null string pointer");
        return Err(RmvStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        RmvStatus::Utf8
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> RmvStatus {
    if out.is_null() {
        return fail(RmvStatus::NullPointer, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            RmvStatus::Ok
        }
        Err(_) => fail(RmvStatus::InvalidArgument, "output contains NUL"),
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a `rmv_*` function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn rmv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a graph from its JSON form
/// `{"dim": 2, "n": 6, "edges": [[0,1], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rmv_graph_from_json(
    json: *const c_char,
    out: *mut *mut RmvGraph,
) -> RmvStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    if out.is_null() {
        return fail(RmvStatus::NullPointer, "null output pointer");
    }
    match serde_json::from_str::<RigidGraph>(text) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(RmvGraph(g)));
            RmvStatus::Ok
        }
        Err(e) => fail(RmvStatus::Parse, &format!("graph JSON: {e}")),
    }
}

/// Build a named graph, e.g. `desargues` or `cyclohexane_caterpillar:2`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rmv_graph_named(name: *const c_char, out: *mut *mut RmvGraph) -> RmvStatus {
    let name = match read_str(name) {
        Ok(t) => t,
        Err(s) => return s,
    };
    if out.is_null() {
        return fail(RmvStatus::NullPointer, "null output pointer");
    }
    match rigidmv::constructions::make(name) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(RmvGraph(g)));
            RmvStatus::Ok
        }
        Err(e) => fail(RmvStatus::UnknownName, &e.to_string()),
    }
}

/// # Safety
/// `g` must be a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn rmv_graph_free(g: *mut RmvGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

unsafe fn graph_ref<'a>(g: *const RmvGraph) -> Result<&'a RigidGraph, RmvStatus> {
    if g.is_null() {
        set_error("null graph handle");
        return Err(RmvStatus::NullPointer);
    }
    Ok(&(*g).0)
}

/// Vertex count, dimension and edge count of a graph.
///
/// # Safety
/// `g` must be a live handle; out-pointers may be null to skip a field.
#[no_mangle]
pub unsafe extern "C" fn rmv_graph_counts(
    g: *const RmvGraph,
    n: *mut u8,
    dim: *mut u8,
    edges: *mut u32,
) -> RmvStatus {
    let g = match graph_ref(g) {
        Ok(g) => g,
        Err(s) => return s,
    };
    if !n.is_null() {
        *n = g.n();
    }
    if !dim.is_null() {
        *dim = g.dim().as_u8();
    }
    if !edges.is_null() {
        *edges = g.edge_count() as u32;
    }
    RmvStatus::Ok
}

/// Dimension-appropriate validity (Laman / simplicial-skeleton check).
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rmv_graph_is_valid(g: *const RmvGraph, out: *mut bool) -> RmvStatus {
    let g = match graph_ref(g) {
        Ok(g) => g,
        Err(s) => return s,
    };
    if out.is_null() {
        return fail(RmvStatus::NullPointer, "null output pointer");
    }
    *out = g.is_valid();
    RmvStatus::Ok
}

/// Graph JSON including edges in canonical order.
///
/// # Safety
/// `g` must be a live handle; `out` receives a string for [`rmv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rmv_graph_to_json(g: *const RmvGraph, out: *mut *mut c_char) -> RmvStatus {
    let g = match graph_ref(g) {
        Ok(g) => g,
        Err(s) => return s,
    };
    match serde_json::to_string(g) {
        Ok(s) => give_string(s, out),
        Err(e) => fail(RmvStatus::Compute, &e.to_string()),
    }
}

/// Canonical isomorphism key as lowercase hex.
///
/// # Safety
/// `g` must be a live handle; `out` receives a string for [`rmv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rmv_graph_canonical_key(
    g: *const RmvGraph,
    out: *mut *mut c_char,
) -> RmvStatus {
    let g = match graph_ref(g) {
        Ok(g) => g,
        Err(s) => return s,
    };
    give_string(rigidmv::canon::canonical_key(g).hex(), out)
}

/// Henneberg class: 1 when constructible with H1 steps only, else 2.
/// `sequence_json`, when non-null, receives the witness sequence with the
/// maximum H1 count.
///
/// # Safety
/// `g` must be a live handle; out-pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn rmv_graph_classify(
    g: *const RmvGraph,
    h_class: *mut u8,
    sequence_json: *mut *mut c_char,
) -> RmvStatus {
    let g = match graph_ref(g) {
        Ok(g) => g,
        Err(s) => return s,
    };
    match g.classify_henneberg() {
        Ok((class, seq)) => {
            if !h_class.is_null() {
                *h_class = match class {
                    HClass::H1 => 1,
                    HClass::H2 => 2,
                };
            }
            if !sequence_json.is_null() {
                let txt = serde_json::to_string(&seq).expect("sequence serializes");
                return give_string(txt, sequence_json);
            }
            RmvStatus::Ok
        }
        Err(e) => fail(RmvStatus::InvalidGraph, &e.to_string()),
    }
}

/// Minimum mixed volume over all pinnings. `formulation`: 0 naive,
/// 1 augmented.
///
/// # Safety
/// `g` must be a live handle; `out_mv` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rmv_min_mixed_volume(
    g: *const RmvGraph,
    formulation: u8,
    seed: u64,
    out_mv: *mut u64,
) -> RmvStatus {
    let g = match graph_ref(g) {
        Ok(g) => g,
        Err(s) => return s,
    };
    if out_mv.is_null() {
        return fail(RmvStatus::NullPointer, "null output pointer");
    }
    let f = match formulation {
        0 => Formulation::Naive,
        1 => Formulation::Augmented,
        other => return fail(RmvStatus::InvalidArgument, &format!("formulation {other}")),
    };
    if !g.is_valid() {
        return fail(RmvStatus::InvalidGraph, "graph fails the validity check");
    }
    match mixedvol::min_mixed_volume_seeded(g, f, seed) {
        Ok(rep) => {
            *out_mv = rep.mv;
            RmvStatus::Ok
        }
        Err(e) => fail(RmvStatus::Compute, &e.to_string()),
    }
}

/// Mixed volume of a support-dump JSON
/// (`{"vars": [...], "supports": [[[..]]], "formulation": "naive"}`).
///
/// # Safety
/// `supports_json` must be NUL-terminated; out-pointers valid or null.
#[no_mangle]
pub unsafe extern "C" fn rmv_mixed_volume_supports(
    supports_json: *const c_char,
    seed: u64,
    out_mv: *mut u64,
    out_cells: *mut u64,
) -> RmvStatus {
    let text = match read_str(supports_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let sys: SupportSystem = match serde_json::from_str(text) {
        Ok(s) => s,
        Err(e) => return fail(RmvStatus::Parse, &format!("support JSON: {e}")),
    };
    match mixedvol::mixed_volume_seeded(&sys, seed) {
        Ok(res) => {
            if !out_mv.is_null() {
                *out_mv = res.mv;
            }
            if !out_cells.is_null() {
                *out_cells = res.cells;
            }
            RmvStatus::Ok
        }
        Err(e) => fail(RmvStatus::Compute, &e.to_string()),
    }
}

fn dim_of(dim: u8) -> Result<Dim, RmvStatus> {
    Dim::from_u8(dim).ok_or_else(|| {
        set_error("dim must be 2 or 3");
        RmvStatus::InvalidArgument
    })
}

/// Bezout bound 4^(n-2) / 8^(n-3) as a decimal string.
///
/// # Safety
/// `out` receives a string for [`rmv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rmv_bezout(n: u8, dim: u8, out: *mut *mut c_char) -> RmvStatus {
    let d = match dim_of(dim) {
        Ok(d) => d,
        Err(s) => return s,
    };
    match rigidmv::bounds::bezout(n, d) {
        Ok(v) => give_string(v.to_string(), out),
        Err(e) => fail(RmvStatus::InvalidArgument, &e.to_string()),
    }
}

/// Published binomial upper bound as a decimal string.
///
/// # Safety
/// `out` receives a string for [`rmv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rmv_binomial_upper(n: u8, dim: u8, out: *mut *mut c_char) -> RmvStatus {
    let d = match dim_of(dim) {
        Ok(d) => d,
        Err(s) => return s,
    };
    match rigidmv::bounds::binomial_upper(n, d) {
        Ok(v) => give_string(v.to_string(), out),
        Err(e) => fail(RmvStatus::InvalidArgument, &e.to_string()),
    }
}

/// Constructive lower-bound table row value as a decimal string.
///
/// # Safety
/// `out` receives a string for [`rmv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rmv_table_lower(dim: u8, n: u8, out: *mut *mut c_char) -> RmvStatus {
    let d = match dim_of(dim) {
        Ok(d) => d,
        Err(s) => return s,
    };
    match rigidmv::bounds::table_lower(d, n) {
        Ok(v) => give_string(v.to_string(), out),
        Err(e) => fail(RmvStatus::InvalidArgument, &e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        rmv_string_free(p);
        s
    }

    #[test]
    fn named_graph_lifecycle() {
        unsafe {
            let mut g: *mut RmvGraph = ptr::null_mut();
            assert_eq!(rmv_graph_named(cstr("desargues").as_ptr(), &mut g), RmvStatus::Ok);
            let (mut n, mut dim, mut e) = (0u8, 0u8, 0u32);
            assert_eq!(rmv_graph_counts(g, &mut n, &mut dim, &mut e), RmvStatus::Ok);
            assert_eq!((n, dim, e), (6, 2, 9));
            let mut ok = false;
            assert_eq!(rmv_graph_is_valid(g, &mut ok), RmvStatus::Ok);
            assert!(ok);
            rmv_graph_free(g);
        }
    }

    #[test]
    fn json_round_trip_via_abi() {
        unsafe {
            let mut g: *mut RmvGraph = ptr::null_mut();
            assert_eq!(rmv_graph_named(cstr("cyclohexane").as_ptr(), &mut g), RmvStatus::Ok);
            let mut js: *mut c_char = ptr::null_mut();
            assert_eq!(rmv_graph_to_json(g, &mut js), RmvStatus::Ok);
            let text = take_string(js);
            let mut g2: *mut RmvGraph = ptr::null_mut();
            assert_eq!(rmv_graph_from_json(cstr(&text).as_ptr(), &mut g2), RmvStatus::Ok);
            let mut k1: *mut c_char = ptr::null_mut();
            let mut k2: *mut c_char = ptr::null_mut();
            assert_eq!(rmv_graph_canonical_key(g, &mut k1), RmvStatus::Ok);
            assert_eq!(rmv_graph_canonical_key(g2, &mut k2), RmvStatus::Ok);
            assert_eq!(take_string(k1), take_string(k2));
            rmv_graph_free(g);
            rmv_graph_free(g2);
        }
    }

    #[test]
    fn mixed_volume_via_abi() {
        unsafe {
            let mut g: *mut RmvGraph = ptr::null_mut();
            assert_eq!(rmv_graph_named(cstr("cyclohexane").as_ptr(), &mut g), RmvStatus::Ok);
            let mut mv = 0u64;
            assert_eq!(rmv_min_mixed_volume(g, 1, 0, &mut mv), RmvStatus::Ok);
            assert_eq!(mv, 16);
            rmv_graph_free(g);
        }
    }

    #[test]
    fn errors_set_messages() {
        unsafe {
            let mut g: *mut RmvGraph = ptr::null_mut();
            assert_eq!(rmv_graph_named(cstr("nonesuch").as_ptr(), &mut g), RmvStatus::UnknownName);
            let msg = CStr::from_ptr(rmv_last_error_message()).to_str().unwrap();
            assert!(msg.contains("nonesuch"));
            assert_eq!(rmv_graph_from_json(ptr::null(), &mut g), RmvStatus::NullPointer);
        }
    }

    #[test]
    fn bound_strings() {
        unsafe {
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(rmv_bezout(6, 2, &mut s), RmvStatus::Ok);
            assert_eq!(take_string(s), "256");
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(rmv_binomial_upper(6, 3, &mut s), RmvStatus::Ok);
            assert_eq!(take_string(s), "40");
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(rmv_table_lower(3, 9, &mut s), RmvStatus::Ok);
            assert_eq!(take_string(s), "256");
        }
    }

    #[test]
    fn classify_via_abi() {
        unsafe {
            let mut g: *mut RmvGraph = ptr::null_mut();
            assert_eq!(rmv_graph_named(cstr("octahedron").as_ptr(), &mut g), RmvStatus::Ok);
            let mut class = 0u8;
            let mut seq: *mut c_char = ptr::null_mut();
            assert_eq!(rmv_graph_classify(g, &mut class, &mut seq), RmvStatus::Ok);
            assert_eq!(class, 2);
            let seq = take_string(seq);
            assert!(seq.contains("\"S\""), "sequence {seq}");
            rmv_graph_free(g);
        }
    }
}
