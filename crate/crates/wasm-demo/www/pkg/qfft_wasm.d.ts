/* tslint:disable */
/* eslint-disable */

export class Heatmap {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly dim: number;
    /**
     * Largest deviation of the fast table from the direct one.
     */
    readonly maxError: number;
    readonly maxImag: number;
    /**
     * Row-major, `B` rows then `A`: the real part for Wigner, the modulus for Weyl.
     */
    readonly values: Float64Array;
}

export class Spectrum {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly dim: number;
    readonly directMults: number;
    readonly fastMults: number;
    /**
     * `|F s(K)|` for centered `K` in ascending order.
     */
    readonly magnitudes: Float64Array;
    readonly maxError: number;
}

export function heatmap(kind: string, factors: string, shape: string, seed: number): Heatmap;

export function indexMap(mode: string, params: string): string;

export function spectrum(backend: string, params: string, shape: string, seed: number): Spectrum;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_heatmap_free: (a: number, b: number) => void;
    readonly __wbg_spectrum_free: (a: number, b: number) => void;
    readonly heatmap: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly heatmap_dim: (a: number) => number;
    readonly heatmap_maxError: (a: number) => number;
    readonly heatmap_maxImag: (a: number) => number;
    readonly heatmap_values: (a: number) => [number, number];
    readonly indexMap: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly spectrum: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly spectrum_dim: (a: number) => number;
    readonly spectrum_directMults: (a: number) => number;
    readonly spectrum_fastMults: (a: number) => number;
    readonly spectrum_magnitudes: (a: number) => [number, number];
    readonly spectrum_maxError: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
