import { ApiError, Client } from './api'
import type { SessionView } from './types'

export interface Ghost {
  node: number
  position: number[]
}

type Listener = () => void

/** Client-side board state.
 *
 * The store never computes game arithmetic: `view` is always the last
 * server response, and ghosts come from the what-if endpoint.  It keeps
 * the full move log across undos so the history strip can scrub both
 * ways; firing a different node after scrubbing back truncates the
 * abandoned branch.  At most one mutation is in flight at a time.
 */
export class BoardStore {
  view: SessionView | null = null
  fullLog: number[] = []
  fullValues: number[] = []
  ghost: Ghost | null = null
  toast: string | null = null
  busy = false

  private pending: Promise<void> | null = null
  private listeners: Listener[] = []

  constructor(private client: Client) {}

  subscribe(fn: Listener): void {
    this.listeners.push(fn)
  }

  private notify(): void {
    for (const fn of this.listeners) fn()
  }

  get cursor(): number {
    return this.view ? this.view.history.length : 0
  }

  async whenIdle(): Promise<void> {
    while (this.pending) {
      await this.pending
    }
  }

  private run(op: () => Promise<void>): Promise<void> {
    if (this.busy) return Promise.resolve()
    this.busy = true
    this.notify()
    const task = op()
      .catch((err) => {
        this.toast = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err)
      })
      .finally(() => {
        this.busy = false
        this.pending = null
        this.notify()
      })
    this.pending = task
    return task
  }

  loadPreset(id: string, position?: number[]): Promise<void> {
    return this.run(async () => {
      this.view = await this.client.createFromPreset(id, position)
      this.fullLog = []
      this.fullValues = []
      this.ghost = null
      this.toast = null
    })
  }

  loadGraph(graph: unknown, position: number[]): Promise<void> {
    return this.run(async () => {
      this.view = await this.client.createFromGraph(graph, position)
      this.fullLog = []
      this.fullValues = []
      this.ghost = null
      this.toast = null
    })
  }

  /** Fire a node.  Ignored while busy or when the node is not fireable
   *  (dim nodes never send a request). */
  fire(node: number): Promise<void> {
    const view = this.view
    if (!view || !view.fireable.includes(node)) return Promise.resolve()
    return this.run(async () => {
      try {
        const next = await this.client.fire(view.id, node)
        const at = view.history.length
        if (this.fullLog[at] !== node) {
          // a new line of play: drop the abandoned forward branch
          this.fullLog = this.fullLog.slice(0, at)
          this.fullValues = this.fullValues.slice(0, at)
        }
        this.fullLog[at] = node
        this.fullValues[at] = next.analysis.functional_values[at]
        this.view = next
        this.ghost = null
      } catch (err) {
        if (err instanceof ApiError && err.status === 409) {
          // stale board: re-sync with the server and tell the user
          this.view = await this.client.getSession(view.id)
          this.toast = `${err.code}: ${err.message}`
          return
        }
        throw err
      }
    })
  }

  /** Preview a firing without committing it. */
  async hover(node: number): Promise<void> {
    const view = this.view
    if (!view || view.status !== 'Active' || !view.fireable.includes(node)) {
      this.unhover()
      return
    }
    try {
      const preview = await this.client.whatif(view.id, node)
      this.ghost = { node, position: preview.position }
    } catch (err) {
      if (!(err instanceof ApiError && err.status === 409)) throw err
      this.ghost = null
    }
    this.notify()
  }

  unhover(): void {
    if (this.ghost) {
      this.ghost = null
      this.notify()
    }
  }

  undoOne(): Promise<void> {
    const view = this.view
    if (!view || view.history.length === 0) return Promise.resolve()
    return this.run(async () => {
      this.view = await this.client.undo(view.id)
      this.ghost = null
    })
  }

  /** Rewind or replay to a history index (clamped), via repeated undo or
   *  re-firing the logged moves. */
  scrub(index: number): Promise<void> {
    const view = this.view
    if (!view) return Promise.resolve()
    const target = Math.max(0, Math.min(index, this.fullLog.length))
    return this.run(async () => {
      let current = this.view!
      while (current.history.length > target) {
        current = await this.client.undo(current.id)
        this.view = current
        this.notify()
      }
      while (current.history.length < target) {
        current = await this.client.fire(current.id, this.fullLog[current.history.length])
        this.view = current
        this.notify()
      }
      this.ghost = null
    })
  }

  autoplay(strategy: string, steps: number): Promise<void> {
    const view = this.view
    if (!view) return Promise.resolve()
    return this.run(async () => {
      const next = await this.client.autoplay(view.id, strategy, steps)
      const played = next.history.map((h) => h.node)
      this.fullLog = played
      this.fullValues = next.analysis.functional_values.slice()
      this.view = next
      this.ghost = null
    })
  }
}
