//! C ABI over the `formgroup` engine.
//!
//! Groups and subgroups are opaque heap handles released with their `_free`
//! functions. Every fallible call returns an [`FgStatus`]; on failure the
//! message is available from [`fg_last_error_message`] on the same thread.
//! Strings returned through out-parameters are owned by the caller and must be
//! released with [`fg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use formgroup::families::Selector;
use formgroup::formations::{f_hypercentre, residual, Formation, SigmaPartition};
use formgroup::io::parse_group;
use formgroup::lattice::DEFAULT_LATTICE_BUDGET;
use formgroup::subnormality::{is_f_subnormal, is_k_f_subnormal, is_sigma_subnormal, is_subnormal};
use formgroup::verifier::{exit_code, run_claim, Catalog, Claim, VerifyOptions, VerifyPlan};
use formgroup::{Error, Group, Subgroup};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    NotAGroup = 5,
    OrderCapExceeded = 6,
    BudgetExceeded = 7,
    Precondition = 8,
    Io = 9,
    Internal = 10,
}

/// Which subnormality notion [`fg_subnormal`] tests.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FgSubnormalKind {
    Subnormal = 0,
    KF = 1,
    F = 2,
    Sigma = 3,
}

/// Opaque group handle.
pub struct FgGroup(Group);

/// Opaque subgroup handle; element indices refer to the group it came from.
pub struct FgSubgroup(Subgroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FgStatus {
    match e {
        Error::Parse { .. } => FgStatus::Parse,
        Error::NotAGroup(_) | Error::InvalidPermutation(_) => FgStatus::NotAGroup,
        Error::OrderCapExceeded { .. } => FgStatus::OrderCapExceeded,
        Error::SearchBudgetExceeded { .. } | Error::LatticeBudgetExceeded { .. } => FgStatus::BudgetExceeded,
        Error::Precondition(_)
        | Error::NotNormal { .. }
        | Error::NotCentralized { .. }
        | Error::NotASubgroup(_)
        | Error::FormationLawViolated { .. }
        | Error::HypercentreNotHypercentral { .. } => FgStatus::Precondition,
        Error::Io(_) => FgStatus::Io,
        Error::ElementOutOfRange { .. }
        | Error::UnknownFormation(_)
        | Error::InvalidSigma(_)
        | Error::InvalidSelector(_)
        | Error::InvalidConfig(_) => FgStatus::InvalidArgument,
    }
}

struct Fail(FgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, recording any error or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> FgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FgStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FgStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(FgStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(FgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn opt_str_arg<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, what).map(Some)
    }
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(FgStatus::NullArgument, format!("{what} is null")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(FgStatus::NullArgument, format!("{what} is null")))
}

fn formation(name: &str, sigma: Option<&str>) -> Result<Formation, Fail> {
    let sigma = sigma.map(SigmaPartition::parse).transpose()?;
    Ok(Formation::from_selector(name, sigma.as_ref())?)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn fg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn fg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a group from a selector such as `sym:4` or `prod(cyclic:2,sym:3)`.
///
/// # Safety
/// `selector` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_group_from_selector(selector: *const c_char, order_cap: usize, out: *mut *mut FgGroup) -> FgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let s = str_arg(selector, "selector")?;
        let sel = Selector::parse(s)?;
        let g = sel.build(order_cap)?.with_label(sel.to_string());
        *out = Box::into_raw(Box::new(FgGroup(g)));
        Ok(())
    })
}

/// Parses a group file body (`perm <degree>` or `table <n>` format).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_group_from_text(text: *const c_char, order_cap: usize, out: *mut *mut FgGroup) -> FgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let g = parse_group(str_arg(text, "text")?, order_cap)?;
        *out = Box::into_raw(Box::new(FgGroup(g)));
        Ok(())
    })
}

/// Builds a group from a row-major `n * n` Cayley table.
///
/// # Safety
/// `table` must point to `n * n` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fg_group_from_table(table: *const u32, n: usize, out: *mut *mut FgGroup) -> FgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if table.is_null() {
            return Err(Fail(FgStatus::NullArgument, "table is null".into()));
        }
        let flat = std::slice::from_raw_parts(table, n * n);
        let rows: Vec<Vec<usize>> = flat.chunks(n.max(1)).map(|r| r.iter().map(|&x| x as usize).collect()).collect();
        let g = Group::from_cayley_table(&rows)?;
        *out = Box::into_raw(Box::new(FgGroup(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fg_group_free(g: *mut FgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Group order, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn fg_group_order(g: *const FgGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Product of element indices `a` and `b`.
///
/// # Safety
/// `g` must be a live group handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_group_mul(g: *const FgGroup, a: usize, b: usize, out: *mut usize) -> FgStatus {
    guard(|| {
        let g = &ref_arg(g, "group")?.0;
        let out = out_arg(out, "out")?;
        for x in [a, b] {
            if x >= g.order() {
                return Err(Error::ElementOutOfRange { index: x, order: g.order() }.into());
            }
        }
        *out = g.mul(a, b);
        Ok(())
    })
}

/// The F-residual. `sigma` may be null unless `formation` is
/// `sigma-nilpotent`.
///
/// # Safety
/// `g` must be a live group handle, strings nul-terminated or null, `out`
/// valid.
#[no_mangle]
pub unsafe extern "C" fn fg_residual(
    g: *const FgGroup,
    formation_name: *const c_char,
    sigma: *const c_char,
    out: *mut *mut FgSubgroup,
) -> FgStatus {
    guard(|| {
        let g = &ref_arg(g, "group")?.0;
        let out = out_arg(out, "out")?;
        let f = formation(str_arg(formation_name, "formation")?, opt_str_arg(sigma, "sigma")?)?;
        *out = Box::into_raw(Box::new(FgSubgroup(residual(g, &f)?)));
        Ok(())
    })
}

/// The F-hypercentre. Arguments as for [`fg_residual`].
///
/// # Safety
/// As for [`fg_residual`].
#[no_mangle]
pub unsafe extern "C" fn fg_hypercentre(
    g: *const FgGroup,
    formation_name: *const c_char,
    sigma: *const c_char,
    out: *mut *mut FgSubgroup,
) -> FgStatus {
    guard(|| {
        let g = &ref_arg(g, "group")?.0;
        let out = out_arg(out, "out")?;
        let f = formation(str_arg(formation_name, "formation")?, opt_str_arg(sigma, "sigma")?)?;
        *out = Box::into_raw(Box::new(FgSubgroup(f_hypercentre(g, &f)?)));
        Ok(())
    })
}

/// Subgroup generated by `len` element indices.
///
/// # Safety
/// `g` must be a live group handle, `gens` readable for `len` values (or null
/// when `len` is 0), `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fg_subgroup_generated(
    g: *const FgGroup,
    gens: *const usize,
    len: usize,
    out: *mut *mut FgSubgroup,
) -> FgStatus {
    guard(|| {
        let g = &ref_arg(g, "group")?.0;
        let out = out_arg(out, "out")?;
        let gens = gens_arg(g, gens, len)?;
        *out = Box::into_raw(Box::new(FgSubgroup(g.closure(gens))));
        Ok(())
    })
}

unsafe fn gens_arg<'a>(g: &Group, gens: *const usize, len: usize) -> Result<&'a [usize], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if gens.is_null() {
        return Err(Fail(FgStatus::NullArgument, "gens is null".into()));
    }
    let s = std::slice::from_raw_parts(gens, len);
    if let Some(&bad) = s.iter().find(|&&x| x >= g.order()) {
        return Err(Error::ElementOutOfRange { index: bad, order: g.order() }.into());
    }
    Ok(s)
}

/// # Safety
/// `s` must be null or a subgroup handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fg_subgroup_free(s: *mut FgSubgroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Subgroup order, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live subgroup handle.
#[no_mangle]
pub unsafe extern "C" fn fg_subgroup_order(s: *const FgSubgroup) -> usize {
    s.as_ref().map_or(0, |s| s.0.order())
}

/// Copies up to `cap` sorted element indices into `buf` and returns the
/// subgroup order, so a short buffer can be detected and retried.
///
/// # Safety
/// `s` must be a live subgroup handle; `buf` writable for `cap` values or null
/// when `cap` is 0.
#[no_mangle]
pub unsafe extern "C" fn fg_subgroup_elements(s: *const FgSubgroup, buf: *mut usize, cap: usize) -> usize {
    let Some(s) = s.as_ref() else { return 0 };
    let elems = s.0.elements();
    if !buf.is_null() {
        let n = cap.min(elems.len());
        ptr::copy_nonoverlapping(elems.as_ptr(), buf, n);
    }
    elems.len()
}

/// Tests whether the subgroup generated by `gens` is subnormal of the given
/// kind. On success `*positive` is set, and if `chain` is non-null it
/// receives the rendered witness chain (or null when negative).
///
/// # Safety
/// Handles live, strings nul-terminated or null, `gens` readable for `len`
/// values, `positive` valid, `chain` null or valid.
#[no_mangle]
pub unsafe extern "C" fn fg_subnormal(
    g: *const FgGroup,
    gens: *const usize,
    len: usize,
    kind: FgSubnormalKind,
    formation_name: *const c_char,
    sigma: *const c_char,
    positive: *mut bool,
    chain: *mut *mut c_char,
) -> FgStatus {
    guard(|| {
        let g = &ref_arg(g, "group")?.0;
        let positive = out_arg(positive, "positive")?;
        let a = g.closure(gens_arg(g, gens, len)?);
        let sigma = opt_str_arg(sigma, "sigma")?;
        let witness = match kind {
            FgSubnormalKind::Subnormal => is_subnormal(g, &a),
            FgSubnormalKind::KF | FgSubnormalKind::F => {
                let f = formation(str_arg(formation_name, "formation")?, sigma)?;
                if kind == FgSubnormalKind::KF {
                    is_k_f_subnormal(g, &a, &f, DEFAULT_LATTICE_BUDGET)?
                } else {
                    is_f_subnormal(g, &a, &f, DEFAULT_LATTICE_BUDGET)?
                }
            }
            FgSubnormalKind::Sigma => {
                let s = sigma.ok_or_else(|| Fail(FgStatus::NullArgument, "sigma is null".into()))?;
                is_sigma_subnormal(g, &a, &SigmaPartition::parse(s)?, DEFAULT_LATTICE_BUDGET)?
            }
        };
        *positive = witness.is_some();
        if let Some(chain) = chain.as_mut() {
            *chain = witness.map_or(ptr::null_mut(), |w| into_c_string(w.render()));
        }
        Ok(())
    })
}

/// Runs a verification claim (`theorem-a`, `theorem-b`, `schenkman`,
/// `holomorph-bound`, `section3`, `lemmas` or `all`) over the generated
/// catalog up to `max_order` and returns the reports as JSON, with the exit
/// code the command-line tool would use. `formation` and `sigma` may be null
/// for the standard plan.
///
/// # Safety
/// Strings nul-terminated or null; `json` and `exit` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fg_verify_json(
    claim: *const c_char,
    max_order: usize,
    order_cap: usize,
    formation_name: *const c_char,
    sigma: *const c_char,
    seed: u64,
    json: *mut *mut c_char,
    exit: *mut i32,
) -> FgStatus {
    guard(|| {
        let json = out_arg(json, "json")?;
        let exit = out_arg(exit, "exit")?;
        let claim = Claim::parse(str_arg(claim, "claim")?)?;
        let sigma = opt_str_arg(sigma, "sigma")?.map(SigmaPartition::parse).transpose()?;
        let mut plan = VerifyPlan::standard(sigma.iter().cloned().collect());
        if let Some(name) = opt_str_arg(formation_name, "formation")? {
            plan.formations = vec![Formation::from_selector(name, sigma.as_ref())?];
        }
        let catalog = Catalog::generate(max_order, order_cap, Vec::new())?;
        let opts = VerifyOptions { seed, ..VerifyOptions::default() };
        let reports = run_claim(claim, &catalog, &plan, &opts)?;
        let code = exit_code(&reports);
        let value = serde_json::json!({ "reports": reports, "exit_code": code });
        *json = into_c_string(serde_json::to_string(&value).map_err(|e| Fail(FgStatus::Internal, e.to_string()))?);
        *exit = code;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
