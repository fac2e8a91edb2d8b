/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_heatmap_free: (a: number, b: number) => void;
export const __wbg_spectrum_free: (a: number, b: number) => void;
export const heatmap: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const heatmap_dim: (a: number) => number;
export const heatmap_maxError: (a: number) => number;
export const heatmap_maxImag: (a: number) => number;
export const heatmap_values: (a: number) => [number, number];
export const indexMap: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const spectrum: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const spectrum_dim: (a: number) => number;
export const spectrum_directMults: (a: number) => number;
export const spectrum_fastMults: (a: number) => number;
export const spectrum_magnitudes: (a: number) => [number, number];
export const spectrum_maxError: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
