/* tslint:disable */
/* eslint-disable */

/**
 * Searches for a finite-memory deviation that beats memoryless play.
 */
export function check_game(game: string, seq: string, mem_bound: number, limsup: boolean): string;

/**
 * Text form of a built-in gadget, for the game editor.
 */
export function gadget_text(spec: string): string;

/**
 * Partial ratios `R_n` of a reward word together with its exact value.
 */
export function payoff_curve(seq: string, word: string, horizon: number, limsup: boolean): string;

/**
 * Maximin and minimax over memoryless strategies.
 */
export function solve_game(game: string, seq: string, limsup: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly check_game: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly gadget_text: (a: number, b: number) => [number, number, number, number];
    readonly payoff_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly solve_game: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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
