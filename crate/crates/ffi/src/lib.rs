//! C ABI for `fsa-approx`.
//!
//! Grammars and automata are opaque heap handles released with their
//! `*_free` function. Fallible calls return an [`FsaStatus`] and write their
//! result through an out-pointer; after a failure,
//! [`fsa_last_error_message`] describes it. Strings are NUL-terminated
//! UTF-8; strings returned by the library are released with
//! [`fsa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use fsa_approx::{approximate, ApproxOptions, Automaton, ConstraintSet, Error, Grammar};

/// Opaque grammar handle.
pub struct FsaGrammar(Grammar);

/// Opaque automaton handle.
pub struct FsaAutomaton(Automaton);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    UnknownSymbol = 4,
    UnknownNonterminal = 5,
    StateCapExceeded = 6,
    AlphabetMismatch = 7,
    Other = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsaConstraints {
    /// Boundary, adjacency and recursion constraints.
    Full = 0,
    /// Boundary and adjacency constraints only.
    OneToSix = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FsaApproxOptions {
    pub constraints: FsaConstraints,
    /// Comma-separated nonterminals that get recursion constraints; NULL
    /// means all.
    pub full_rule_nonterminals: *const c_char,
    pub use_scc: bool,
    /// Largest intermediate automaton allowed.
    pub state_cap: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: FsaStatus, message: impl Into<String>) -> FsaStatus {
    set_error(message.into());
    status
}

fn from_error(e: Error) -> FsaStatus {
    let status = match &e {
        Error::Syntax { .. } | Error::EmptyGrammar => FsaStatus::Syntax,
        Error::UnknownSymbol(_) => FsaStatus::UnknownSymbol,
        Error::UnknownNonterminal(_) => FsaStatus::UnknownNonterminal,
        Error::StateCapExceeded { .. } => FsaStatus::StateCapExceeded,
        Error::AlphabetMismatch => FsaStatus::AlphabetMismatch,
        _ => FsaStatus::Other,
    };
    fail(status, e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, FsaStatus> {
    if s.is_null() {
        return Err(fail(FsaStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(FsaStatus::InvalidUtf8, "string argument is not UTF-8"))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! handle {
    ($p:expr) => {
        match unsafe { $p.as_ref() } {
            Some(h) => h,
            None => return fail(FsaStatus::NullPointer, "null handle"),
        }
    };
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fsa_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Default approximation options: all constraints, all nonterminals, no
/// decomposition, the default state cap.
#[no_mangle]
pub extern "C" fn fsa_options_default() -> FsaApproxOptions {
    FsaApproxOptions {
        constraints: FsaConstraints::Full,
        full_rule_nonterminals: ptr::null(),
        use_scc: false,
        state_cap: fsa_approx::approx::DEFAULT_STATE_CAP,
    }
}

/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fsa_grammar_parse(text: *const c_char, out: *mut *mut FsaGrammar) -> FsaStatus {
    if out.is_null() {
        return fail(FsaStatus::NullPointer, "null out-pointer");
    }
    let text = try_status!(read_str(text));
    match Grammar::parse(text) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(FsaGrammar(g)));
            FsaStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Changes the start symbol.
///
/// # Safety
/// `g` must come from [`fsa_grammar_parse`]; `name` must be a valid C string.
#[no_mangle]
pub unsafe extern "C" fn fsa_grammar_set_start(g: *mut FsaGrammar, name: *const c_char) -> FsaStatus {
    let Some(g) = g.as_mut() else {
        return fail(FsaStatus::NullPointer, "null handle");
    };
    let name = try_status!(read_str(name));
    match g.0.clone().with_start(name) {
        Ok(next) => {
            g.0 = next;
            FsaStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `g` must be NULL or come from [`fsa_grammar_parse`], and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn fsa_grammar_free(g: *mut FsaGrammar) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Approximates `g`; `opts` may be NULL for the defaults.
///
/// # Safety
/// Pointers must be valid; `opts.full_rule_nonterminals` must be NULL or a
/// valid C string.
#[no_mangle]
pub unsafe extern "C" fn fsa_approximate(
    g: *const FsaGrammar,
    opts: *const FsaApproxOptions,
    out: *mut *mut FsaAutomaton,
) -> FsaStatus {
    let g = handle!(g);
    if out.is_null() {
        return fail(FsaStatus::NullPointer, "null out-pointer");
    }
    let opts = opts.as_ref().copied().unwrap_or_else(|| fsa_options_default());
    let full = if opts.full_rule_nonterminals.is_null() {
        None
    } else {
        let list = try_status!(read_str(opts.full_rule_nonterminals));
        Some(
            list.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect(),
        )
    };
    let options = ApproxOptions {
        constraints: match opts.constraints {
            FsaConstraints::Full => ConstraintSet::Full,
            FsaConstraints::OneToSix => ConstraintSet::OneToSix,
        },
        full_rule_nonterminals: full,
        use_scc: opts.use_scc,
        trace: false,
        state_cap: opts.state_cap,
    };
    match approximate(&g.0, &options) {
        Ok(result) => {
            *out = Box::into_raw(Box::new(FsaAutomaton(result.automaton)));
            FsaStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Reads an automaton in the tab format.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fsa_automaton_from_tab(text: *const c_char, out: *mut *mut FsaAutomaton) -> FsaStatus {
    if out.is_null() {
        return fail(FsaStatus::NullPointer, "null out-pointer");
    }
    let text = try_status!(read_str(text));
    match Automaton::from_tab(text) {
        Ok(m) => {
            *out = Box::into_raw(Box::new(FsaAutomaton(m)));
            FsaStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Tab rendering of the canonical form, or NULL for a NULL handle.
///
/// # Safety
/// `m` must be NULL or a live automaton handle.
#[no_mangle]
pub unsafe extern "C" fn fsa_automaton_to_tab(m: *const FsaAutomaton) -> *mut c_char {
    match m.as_ref() {
        Some(m) => CString::new(m.0.to_tab()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// Graphviz rendering, or NULL for a NULL handle.
///
/// # Safety
/// `m` must be NULL or a live automaton handle.
#[no_mangle]
pub unsafe extern "C" fn fsa_automaton_to_dot(m: *const FsaAutomaton) -> *mut c_char {
    match m.as_ref() {
        Some(m) => CString::new(m.0.to_dot()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// State count of the canonical form; 0 for a NULL handle.
///
/// # Safety
/// `m` must be NULL or a live automaton handle.
#[no_mangle]
pub unsafe extern "C" fn fsa_automaton_num_states(m: *const FsaAutomaton) -> usize {
    m.as_ref().map_or(0, |m| m.0.canonical().num_states())
}

/// Membership of a whitespace-separated token string. Tokens outside the
/// alphabet make the string rejected.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fsa_automaton_accepts(
    m: *const FsaAutomaton,
    text: *const c_char,
    out: *mut bool,
) -> FsaStatus {
    let m = handle!(m);
    if out.is_null() {
        return fail(FsaStatus::NullPointer, "null out-pointer");
    }
    let text = try_status!(read_str(text));
    let accepted = match m.0.alphabet().parse_word(text) {
        Ok(word) => match m.0.accepts(&word) {
            Ok(a) => a,
            Err(e) => return from_error(e),
        },
        Err(_) => false,
    };
    *out = accepted;
    FsaStatus::Ok
}

/// Language equality; the alphabets may differ.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fsa_automaton_equivalent(
    a: *const FsaAutomaton,
    b: *const FsaAutomaton,
    out: *mut bool,
) -> FsaStatus {
    let (a, b) = (handle!(a), handle!(b));
    if out.is_null() {
        return fail(FsaStatus::NullPointer, "null out-pointer");
    }
    match a.0.lift_pair(&b.0).and_then(|(x, y)| x.equivalent(&y)) {
        Ok(eq) => {
            *out = eq;
            FsaStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `m` must be NULL or a live automaton handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fsa_automaton_free(m: *mut FsaAutomaton) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn fsa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn last_error() -> String {
        unsafe { CStr::from_ptr(fsa_last_error_message()) }.to_str().unwrap().to_string()
    }

    #[test]
    fn approximate_anbn() {
        unsafe {
            let mut g = ptr::null_mut();
            assert_eq!(fsa_grammar_parse(c("S -> a S b\nS ->\n").as_ptr(), &mut g), FsaStatus::Ok);
            let mut m = ptr::null_mut();
            assert_eq!(fsa_approximate(g, ptr::null(), &mut m), FsaStatus::Ok);
            assert_eq!(fsa_automaton_num_states(m), 3);
            let mut yes = false;
            assert_eq!(fsa_automaton_accepts(m, c("a a b").as_ptr(), &mut yes), FsaStatus::Ok);
            assert!(yes);
            assert_eq!(fsa_automaton_accepts(m, c("b a").as_ptr(), &mut yes), FsaStatus::Ok);
            assert!(!yes);
            assert_eq!(fsa_automaton_accepts(m, c("q").as_ptr(), &mut yes), FsaStatus::Ok);
            assert!(!yes);

            let tab = fsa_automaton_to_tab(m);
            let mut back = ptr::null_mut();
            assert_eq!(fsa_automaton_from_tab(tab, &mut back), FsaStatus::Ok);
            let mut eq = false;
            assert_eq!(fsa_automaton_equivalent(m, back, &mut eq), FsaStatus::Ok);
            assert!(eq);
            fsa_string_free(tab);
            fsa_automaton_free(back);
            fsa_automaton_free(m);
            fsa_grammar_free(g);
        }
    }

    #[test]
    fn relaxed_options() {
        unsafe {
            let mut g = ptr::null_mut();
            let text = c("S -> a X a | b X b\nX ->\n");
            assert_eq!(fsa_grammar_parse(text.as_ptr(), &mut g), FsaStatus::Ok);
            let none = c("");
            let mut opts = fsa_options_default();
            opts.full_rule_nonterminals = none.as_ptr();
            let mut loose = ptr::null_mut();
            assert_eq!(fsa_approximate(g, &opts, &mut loose), FsaStatus::Ok);
            let mut yes = false;
            fsa_automaton_accepts(loose, c("a b").as_ptr(), &mut yes);
            assert!(yes);
            opts.full_rule_nonterminals = ptr::null();
            let mut tight = ptr::null_mut();
            assert_eq!(fsa_approximate(g, &opts, &mut tight), FsaStatus::Ok);
            fsa_automaton_accepts(tight, c("a b").as_ptr(), &mut yes);
            assert!(!yes);
            fsa_automaton_free(loose);
            fsa_automaton_free(tight);
            fsa_grammar_free(g);
        }
    }

    #[test]
    fn error_codes() {
        unsafe {
            let mut g = ptr::null_mut();
            assert_eq!(fsa_grammar_parse(c("S a b").as_ptr(), &mut g), FsaStatus::Syntax);
            assert!(last_error().contains("line 1"));
            assert_eq!(fsa_grammar_parse(ptr::null(), &mut g), FsaStatus::NullPointer);

            assert_eq!(fsa_grammar_parse(c("S -> a S b\nS ->").as_ptr(), &mut g), FsaStatus::Ok);
            assert_eq!(fsa_grammar_set_start(g, c("T").as_ptr()), FsaStatus::UnknownNonterminal);
            let mut opts = fsa_options_default();
            opts.state_cap = 2;
            let mut m = ptr::null_mut();
            assert_eq!(fsa_approximate(g, &opts, &mut m), FsaStatus::StateCapExceeded);
            assert!(m.is_null());
            assert!(last_error().contains("initial"));
            fsa_grammar_free(g);

            let mut a = ptr::null_mut();
            assert_eq!(fsa_automaton_from_tab(c("final 0").as_ptr(), &mut a), FsaStatus::Syntax);
            assert_eq!(fsa_automaton_num_states(ptr::null()), 0);
            assert!(fsa_automaton_to_tab(ptr::null()).is_null());
        }
    }
}
