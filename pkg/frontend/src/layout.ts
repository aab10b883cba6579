import type { GraphView } from './types'

export interface Point {
  x: number
  y: number
}

/** Node coordinates in a 640x360 viewbox.
 *
 * Bundled graphs are paths, one-branch trees, or small loops, and get
 * the recognizable fixed shapes; anything else falls back to a few
 * hundred rounds of spring relaxation.
 */
export function layoutGraph(graph: GraphView): Point[] {
  const n = graph.n
  const adj: number[][] = Array.from({ length: n }, () => [])
  for (const e of graph.edges) {
    adj[e.i - 1].push(e.j - 1)
    adj[e.j - 1].push(e.i - 1)
  }
  const degrees = adj.map((a) => a.length)
  const isTree = graph.edges.length === n - 1
  const isLoop = n >= 3 && graph.edges.length === n && degrees.every((d) => d === 2)

  if (n === 1) return [{ x: 320, y: 180 }]
  if (isLoop) return circleLayout(n, adj)
  if (isTree && Math.max(...degrees) <= 2) return pathLayout(n, adj, degrees)
  if (isTree && degrees.filter((d) => d === 3).length === 1 && Math.max(...degrees) === 3) {
    return branchLayout(n, adj, degrees)
  }
  return springLayout(n, adj)
}

function walk(adj: number[][], start: number, banned = -1): number[] {
  const order = [start]
  let prev = banned
  let cur = start
  for (;;) {
    const next = adj[cur].filter((v) => v !== prev)
    if (next.length === 0) return order
    prev = cur
    cur = next[0]
    order.push(cur)
  }
}

function spread(k: number, count: number): number {
  if (count === 1) return 320
  return 60 + (k * 520) / (count - 1)
}

function pathLayout(n: number, adj: number[][], degrees: number[]): Point[] {
  const end = degrees.findIndex((d) => d === 1)
  const order = walk(adj, end)
  const points: Point[] = new Array(n)
  order.forEach((v, k) => {
    points[v] = { x: spread(k, n), y: 180 }
  })
  return points
}

function branchLayout(n: number, adj: number[][], degrees: number[]): Point[] {
  const center = degrees.findIndex((d) => d === 3)
  const arms = adj[center]
    .map((first) => walk(adj, first, center))
    .sort((a, b) => b.length - a.length)
  const [long, second, short] = arms
  const points: Point[] = new Array(n)
  const width = long.length + second.length + 1
  points[center] = { x: spread(second.length, width), y: 180 }
  second.forEach((v, k) => {
    points[v] = { x: spread(second.length - 1 - k, width), y: 180 }
  })
  long.forEach((v, k) => {
    points[v] = { x: spread(second.length + 1 + k, width), y: 180 }
  })
  short.forEach((v, k) => {
    points[v] = { x: points[center].x, y: 180 - 70 * (k + 1) }
  })
  return points
}

function circleLayout(n: number, adj: number[][]): Point[] {
  const order = walk(adj, 0)
  if (order.length > n) order.pop()
  const points: Point[] = new Array(n)
  order.forEach((v, k) => {
    const angle = (2 * Math.PI * k) / n - Math.PI / 2
    points[v] = { x: 320 + 120 * Math.cos(angle), y: 180 + 120 * Math.sin(angle) }
  })
  return points
}

function springLayout(n: number, adj: number[][]): Point[] {
  const points: Point[] = []
  for (let v = 0; v < n; v++) {
    const angle = (2 * Math.PI * v) / n
    points.push({ x: 320 + 100 * Math.cos(angle), y: 180 + 100 * Math.sin(angle) })
  }
  const ideal = 120
  for (let round = 0; round < 300; round++) {
    const force = points.map(() => ({ x: 0, y: 0 }))
    for (let a = 0; a < n; a++) {
      for (let b = a + 1; b < n; b++) {
        const dx = points[b].x - points[a].x
        const dy = points[b].y - points[a].y
        const dist = Math.max(Math.hypot(dx, dy), 1)
        const push = (ideal * ideal) / dist / dist
        force[a].x -= dx * push
        force[a].y -= dy * push
        force[b].x += dx * push
        force[b].y += dy * push
      }
    }
    for (let a = 0; a < n; a++) {
      for (const b of adj[a]) {
        const dx = points[b].x - points[a].x
        const dy = points[b].y - points[a].y
        const dist = Math.max(Math.hypot(dx, dy), 1)
        const pull = (dist - ideal) / dist / 8
        force[a].x += dx * pull
        force[a].y += dy * pull
      }
    }
    for (let a = 0; a < n; a++) {
      points[a].x = Math.min(600, Math.max(40, points[a].x + force[a].x * 0.4))
      points[a].y = Math.min(330, Math.max(30, points[a].y + force[a].y * 0.4))
    }
  }
  return points
}
