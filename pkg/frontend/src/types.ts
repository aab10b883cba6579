export interface EdgeView {
  i: number
  j: number
  p: number
  q: number
  m: number | 'inf'
}

export interface GraphView {
  n: number
  amplitudes: number[][]
  edges: EdgeView[]
}

export interface Analysis {
  fireable: number[]
  word_so_far: number[]
  is_reduced: boolean
  adjacency_flag: boolean
  functional_values: number[]
  terminal_prediction: number | null
}

export interface HistoryEntry {
  node: number
  position: number[]
}

export type SessionStatus = 'Active' | 'Terminal' | 'BoundExceeded'

export interface SessionView {
  id: string
  status: SessionStatus
  n: number
  graph: GraphView
  initial: number[]
  current: number[]
  history: HistoryEntry[]
  fireable: number[]
  analysis: Analysis
}

export interface Preset {
  id: string
  name: string
  description: string
  n: number
  family: string | null
  default_position: number[]
}
