/* tslint:disable */
/* eslint-disable */

/**
 * The user picks instances and labels; SOA predicts before each reveal.
 */
export class OnlineGame {
    free(): void;
    [Symbol.dispose](): void;
    constructor(generator: string, d: number, k: number);
    /**
     * SOA's prediction at `x` and the labels that keep the game realizable.
     */
    offer(x: number): string;
    /**
     * Reveals label `y` at `x`; returns whether SOA erred.
     */
    reveal(x: number, y: number): boolean;
    /**
     * Current state: rounds, mistakes, version space size and the
     * Littlestone dimension of what remains.
     */
    state(): string;
}

/**
 * The four dimensions of a generated class as JSON.
 */
export function dimensions(generator: string, d: number, k: number): string;

/**
 * Exact failure probabilities of good and bad ERM on the Cantor class of
 * dimension `d`, under the lower-bound distribution, for `m = 1..=m_max`.
 */
export function gap_curve(d: number, epsilon: number, m_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_onlinegame_free: (a: number, b: number) => void;
    readonly dimensions: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly gap_curve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly onlinegame_new: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly onlinegame_offer: (a: number, b: number) => [number, number, number, number];
    readonly onlinegame_reveal: (a: number, b: number, c: number) => [number, number, number];
    readonly onlinegame_state: (a: number) => [number, number, number, number];
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
