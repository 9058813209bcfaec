/* tslint:disable */
/* eslint-disable */

/**
 * The chirp kernel `g1` and its Hilbert partner `g2` on `[-t_max, t_max]`.
 */
export function g_kernels(a: number, b: number, t_max: number, n: number): string;

/**
 * Joint LCT analytic signal of a builtin signal, its spectrogram and the
 * reconstruction error of `Re{ilct(la(x))}`.
 */
export function joint_la(a: number, b: number, c: number, signal: string): string;

/**
 * SSB round trip of the two-Gaussian message with the key `(a, b, c)`,
 * and the same demodulation with `b` perturbed by `perturb_pct` percent.
 */
export function ssb_sensitivity(a: number, b: number, c: number, fc: number, perturb_pct: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly g_kernels: (a: number, b: number, c: number, d: number) => [number, number];
    readonly joint_la: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly ssb_sensitivity: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
