/**
 * Slider-to-q mapping.
 *
 * One horizontal control sweeps the whole conjunction/disjunction range:
 * the left end is a hard AND (q = -50), the center is the plain average
 * (q = 1), the right end is a hard OR (q = +50).  Both halves are
 * exponential so the interesting low-|q| region gets most of the travel.
 *
 *   s in [0, 1]   ->  q = 50^s           (1 .. 50)
 *   s in [-1, 0)  ->  q = 2 - 52^(-s)    (-50 .. 1)
 *
 * Both pieces are strictly increasing and they join continuously at
 * s = 0 (52^0 = 1, so 2 - 1 = 1 = 50^0).
 */

const POS_BASE = 50;
const NEG_BASE = 52;

export function mapSlider(s: number): number {
  if (!Number.isFinite(s) || s < -1 || s > 1) {
    throw new RangeError(`slider value out of range: ${s}`);
  }
  if (s >= 0) {
    return Math.pow(POS_BASE, s);
  }
  return 2 - Math.pow(NEG_BASE, -s);
}

/** Inverse of mapSlider; accepts q in [-50, 50]. */
export function sliderForQ(q: number): number {
  if (!Number.isFinite(q) || q < -POS_BASE || q > POS_BASE) {
    throw new RangeError(`q out of range: ${q}`);
  }
  if (q >= 1) {
    return Math.log(q) / Math.log(POS_BASE);
  }
  return -Math.log(2 - q) / Math.log(NEG_BASE);
}

/** Numeric readout shown beside the slider. */
export function formatQ(q: number): string {
  if (Math.abs(q) < 1) {
    return q.toFixed(2);
  }
  return q.toFixed(1);
}
