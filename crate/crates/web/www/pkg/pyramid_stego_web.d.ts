/* tslint:disable */
/* eslint-disable */

/**
 * Quality report (MSE, PSNR, ZCR, histograms) as JSON.
 */
export function analyze(cover: Uint8Array, stego: Uint8Array, table_text: string, baseline: boolean, frame_len: number): string;

export function default_table_text(): string;

export function embed(cover: Uint8Array, message: string, table_text: string, baseline: boolean): Uint8Array;

export function extract(stego: Uint8Array, table_text: string, baseline: boolean): string;

export function synth_cover(bits: number, seconds: number, freq: number, amplitude: number, noise: number, seed: number): Uint8Array;

/**
 * Depth per byte value, cover histogram and capacity, as JSON.
 */
export function table_profile(table_text: string, cover: Uint8Array, baseline: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly default_table_text: () => [number, number];
    readonly embed: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly extract: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly synth_cover: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly table_profile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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
