import type { Preset, SessionView } from './types'

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message)
  }
}

export interface Client {
  presets(): Promise<Preset[]>
  createFromPreset(id: string, position?: number[]): Promise<SessionView>
  createFromGraph(graph: unknown, position: number[]): Promise<SessionView>
  getSession(id: string): Promise<SessionView>
  fire(id: string, node: number): Promise<SessionView>
  whatif(id: string, node: number): Promise<{ position: number[] }>
  undo(id: string): Promise<SessionView>
  autoplay(id: string, strategy: string, steps: number): Promise<SessionView>
}

async function request<T>(
  fetchFn: typeof fetch,
  url: string,
  init?: RequestInit,
): Promise<T> {
  const res = await fetchFn(url, init)
  const body = await res.json()
  if (!res.ok) {
    throw new ApiError(res.status, body?.error ?? 'Error', body?.message ?? res.statusText)
  }
  return body as T
}

function post(body: unknown): RequestInit {
  return {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  }
}

/** Typed client for the session service; every value the UI shows comes
 *  back through one of these calls. */
export function makeClient(baseUrl: string, fetchFn: typeof fetch = fetch): Client {
  const f = fetchFn.bind(globalThis)
  return {
    async presets() {
      const body = await request<{ presets: Preset[] }>(f, `${baseUrl}/presets`)
      return body.presets
    },
    createFromPreset(id, position) {
      return request<SessionView>(f, `${baseUrl}/sessions`, post({ preset: id, position }))
    },
    createFromGraph(graph, position) {
      return request<SessionView>(f, `${baseUrl}/sessions`, post({ graph, position }))
    },
    getSession(id) {
      return request<SessionView>(f, `${baseUrl}/sessions/${id}`)
    },
    fire(id, node) {
      return request<SessionView>(f, `${baseUrl}/sessions/${id}/fire`, post({ node }))
    },
    whatif(id, node) {
      return request<{ position: number[] }>(
        f,
        `${baseUrl}/sessions/${id}/whatif`,
        post({ node }),
      )
    },
    undo(id) {
      return request<SessionView>(f, `${baseUrl}/sessions/${id}/undo`, post({}))
    },
    autoplay(id, strategy, steps) {
      return request<SessionView>(
        f,
        `${baseUrl}/sessions/${id}/autoplay`,
        post({ strategy, steps }),
      )
    },
  }
}
