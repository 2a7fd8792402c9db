/** splitmix64, kept in lockstep with the Python side so that k-means
 * reclustering reproduces the CLI's assignments bit for bit. */

const M64 = (1n << 64n) - 1n;

export class SplitMix64 {
  private state: bigint;

  constructor(seed: number | bigint) {
    this.state = BigInt(seed) & M64;
  }

  nextU64(): bigint {
    this.state = (this.state + 0x9e3779b97f4a7c15n) & M64;
    let z = this.state;
    z = ((z ^ (z >> 30n)) * 0xbf58476d1ce4e5b9n) & M64;
    z = ((z ^ (z >> 27n)) * 0x94d049bb133111ebn) & M64;
    return z ^ (z >> 31n);
  }

  /** Uniform in [0, 1) with 53 bits of mantissa. */
  nextFloat(): number {
    return Number(this.nextU64() >> 11n) * 2 ** -53;
  }
}
